#include <affinelag/problem.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace affinelag {

namespace {

std::string kind_label(ProblemError::Kind kind) {
  switch (kind) {
    case ProblemError::Kind::Syntax: return "syntax error";
    case ProblemError::Kind::Format: return "format error";
    case ProblemError::Kind::Semantic: return "semantic error";
  }
  return "error";
}

}  // namespace

ProblemError::ProblemError(Kind kind, std::string location, const std::string& message)
    : std::runtime_error(kind_label(kind) + " at " + location + ": " + message),
      kind_(kind),
      location_(std::move(location)),
      detail_(message) {}

namespace {

using Kind = ProblemError::Kind;

[[noreturn]] void format_error(const std::string& at, const std::string& message) {
  throw ProblemError(Kind::Format, at, message);
}

[[noreturn]] void semantic_error(const std::string& at, const std::string& message) {
  throw ProblemError(Kind::Semantic, at, message);
}

std::string simplex_text(const Simplex& s) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ']';
  return os.str();
}

const Json& member(const Json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) format_error(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) format_error(at, "missing key \"" + key + "\"");
  return *it;
}

void allow_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& at) {
  if (!j.is_object()) format_error(at, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known |= it.key() == k;
    if (!known) format_error(at, "unknown key \"" + it.key() + "\"");
  }
}

const Json& array_at(const Json& j, const std::string& at) {
  if (!j.is_array()) format_error(at, "expected an array");
  return j;
}

std::size_t count_at(const Json& j, const std::string& at) {
  if (!j.is_number_unsigned()) format_error(at, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Integer integer_at(const Json& j, const std::string& at) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (!j.is_string()) format_error(at, "expected an integer string");
  try {
    return parse_integer(j.get<std::string>());
  } catch (const std::exception&) {
    format_error(at, "\"" + j.get<std::string>() + "\" is not an integer");
  }
}

Rational rational_at(const Json& j, const std::string& at) {
  if (j.is_number_integer()) return Rational(integer_at(j, at));
  if (!j.is_string()) format_error(at, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception&) {
    format_error(at, "\"" + j.get<std::string>() + "\" is not a rational number");
  }
}

Simplex simplex_at(const Json& j, const std::string& at) {
  array_at(j, at);
  Simplex s;
  for (std::size_t i = 0; i < j.size(); ++i) s.push_back(count_at(j[i], at + "[" + std::to_string(i) + "]"));
  return s;
}

IntMatrix matrix_at(const Json& j, std::size_t n, const std::string& at) {
  array_at(j, at);
  if (j.size() != n) semantic_error(at, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix (wrong shape)");
  IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string row_at = at + "[" + std::to_string(r) + "]";
    array_at(j[r], row_at);
    if (j[r].size() != n) semantic_error(row_at, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix (wrong shape)");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = integer_at(j[r][c], row_at + "[" + std::to_string(c) + "]");
  }
  return m;
}

RationalVector vector_at(const Json& j, std::size_t n, const std::string& at) {
  array_at(j, at);
  if (j.size() != n) semantic_error(at, "expected a vector of length " + std::to_string(n));
  RationalVector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rational_at(j[i], at + "[" + std::to_string(i) + "]"));
  return v;
}

std::size_t edge_index(const SimplicialComplex& k, const Json& j, const std::string& at) {
  Simplex e = simplex_at(j, at);
  if (e.size() != 2) format_error(at, "an edge has two vertices");
  for (auto v : e)
    if (v >= k.vertex_count()) semantic_error(at, "unknown vertex " + std::to_string(v));
  auto index = k.find(e);
  if (!index) semantic_error(at, "unknown edge " + simplex_text(e) + " (edges are written with increasing vertices)");
  return *index;
}

std::shared_ptr<const SimplicialComplex> parse_complex(const Json& j) {
  const std::string at = "complex";
  allow_keys(j, {"vertices", "facets", "simplices"}, at);
  const std::size_t n = count_at(member(j, "vertices", at), at + ".vertices");
  const bool closed = j.contains("facets");
  if (closed == j.contains("simplices")) format_error(at, "give exactly one of \"facets\" or \"simplices\"");
  const std::string key = closed ? "facets" : "simplices";
  const Json& list = array_at(j[key], at + "." + key);
  std::vector<Simplex> simplices;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string s_at = at + "." + key + "[" + std::to_string(i) + "]";
    Simplex s = simplex_at(list[i], s_at);
    if (s.empty()) format_error(s_at, "empty simplex");
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] >= n) semantic_error(s_at, "unknown vertex " + std::to_string(s[k]));
      if (k > 0 && s[k - 1] >= s[k]) semantic_error(s_at, "simplex " + simplex_text(s) + " is not strictly increasing");
    }
    simplices.push_back(std::move(s));
  }
  if (closed) return std::make_shared<const SimplicialComplex>(SimplicialComplex::from_facets(n, simplices));
  auto k = SimplicialComplex::from_simplices(n, simplices);
  if (auto v = k.validate()) semantic_error(at + ".simplices", v->message());
  return std::make_shared<const SimplicialComplex>(std::move(k));
}

std::string affine_location(const AffineDataError& e) {
  switch (e.kind()) {
    case AffineDataError::Kind::AffineCocycle: return "affine.translations";
    default: return "system.transports";
  }
}

IntegralAffineData parse_system(const Json& doc, const std::shared_ptr<const SimplicialComplex>& complex) {
  const Json& sys = member(doc, "system", "document");
  allow_keys(sys, {"rank", "transports"}, "system");
  const std::size_t n = count_at(member(sys, "rank", "system"), "system.rank");
  if (n == 0) semantic_error("system.rank", "rank must be positive");

  std::vector<IntMatrix> transports(complex->count(1), IntMatrix::identity(n));
  std::vector<bool> seen(transports.size(), false);
  if (sys.contains("transports")) {
    const Json& list = array_at(sys["transports"], "system.transports");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = "system.transports[" + std::to_string(i) + "]";
      allow_keys(list[i], {"edge", "matrix"}, at);
      std::size_t e = edge_index(*complex, member(list[i], "edge", at), at + ".edge");
      if (seen[e]) semantic_error(at, "edge listed twice");
      seen[e] = true;
      transports[e] = matrix_at(member(list[i], "matrix", at), n, at + ".matrix");
      if (!is_unimodular(transports[e])) semantic_error(at + ".matrix", "non-unimodular matrix on edge " + simplex_text(complex->simplices(1)[e]));
    }
  }
  auto system = std::make_shared<const LocalSystem>(complex, n, std::move(transports));
  if (auto v = validate_cocycle(*system)) semantic_error("system.transports", "cocycle violation: " + v->message());

  RationalVector t(complex->count(1) * n);
  if (doc.contains("affine")) {
    const Json& aff = doc["affine"];
    allow_keys(aff, {"translations"}, "affine");
    std::fill(seen.begin(), seen.end(), false);
    const Json& list = array_at(member(aff, "translations", "affine"), "affine.translations");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = "affine.translations[" + std::to_string(i) + "]";
      allow_keys(list[i], {"edge", "vector"}, at);
      std::size_t e = edge_index(*complex, member(list[i], "edge", at), at + ".edge");
      if (seen[e]) semantic_error(at, "edge listed twice");
      seen[e] = true;
      auto v = vector_at(member(list[i], "vector", at), n, at + ".vector");
      std::copy(v.begin(), v.end(), t.begin() + static_cast<std::ptrdiff_t>(e * n));
    }
  }
  try {
    return IntegralAffineData(system, TwistedCochain(system, 1, Ring::Q, std::move(t)));
  } catch (const AffineDataError& e) {
    semantic_error(affine_location(e), std::string("cocycle violation: ") + e.what());
  }
}

IntegralAffineData parse_atlas(const Json& doc, const std::shared_ptr<const SimplicialComplex>& complex) {
  if (doc.contains("system") || doc.contains("affine"))
    format_error("atlas", "an atlas replaces the \"system\" and \"affine\" sections");
  const Json& atlas = doc["atlas"];
  allow_keys(atlas, {"rank", "transitions"}, "atlas");
  const std::size_t n = count_at(member(atlas, "rank", "atlas"), "atlas.rank");
  if (n == 0) semantic_error("atlas.rank", "rank must be positive");
  std::vector<AtlasTransition> transitions;
  const Json& list = array_at(member(atlas, "transitions", "atlas"), "atlas.transitions");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = "atlas.transitions[" + std::to_string(i) + "]";
    allow_keys(list[i], {"from", "to", "matrix", "translation"}, at);
    AtlasTransition tr;
    tr.from = count_at(member(list[i], "from", at), at + ".from");
    tr.to = count_at(member(list[i], "to", at), at + ".to");
    tr.linear = matrix_at(member(list[i], "matrix", at), n, at + ".matrix");
    tr.translation = list[i].contains("translation") ? vector_at(list[i]["translation"], n, at + ".translation") : RationalVector(n);
    for (auto v : {tr.from, tr.to})
      if (v >= complex->vertex_count()) semantic_error(at, "unknown vertex " + std::to_string(v));
    transitions.push_back(std::move(tr));
  }
  try {
    return from_atlas(complex, n, transitions);
  } catch (const AffineDataError& e) {
    std::string kind;
    switch (e.kind()) {
      case AffineDataError::Kind::NotUnimodular: kind = "non-unimodular matrix: "; break;
      case AffineDataError::Kind::UnknownEdge: kind = "unknown edge: "; break;
      case AffineDataError::Kind::WrongShape: kind = "wrong shape: "; break;
      default: kind = "cocycle violation: "; break;
    }
    semantic_error("atlas.transitions", kind + e.what());
  }
}

TwistedCochain parse_chern(const Json& j, const IntegralAffineData& data) {
  allow_keys(j, {"cocycle", "coordinates"}, "chern");
  if (j.contains("cocycle") == j.contains("coordinates"))
    format_error("chern", "give exactly one of \"cocycle\" or \"coordinates\"");
  auto dual = std::make_shared<const LocalSystem>(dual_system(data.linear()));
  const auto& base = data.base();
  const std::size_t n = data.rank();

  if (j.contains("cocycle")) {
    RationalVector values(base.count(2) * n);
    std::vector<bool> seen(base.count(2), false);
    const Json& list = array_at(j["cocycle"], "chern.cocycle");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = "chern.cocycle[" + std::to_string(i) + "]";
      allow_keys(list[i], {"simplex", "vector"}, at);
      Simplex s = simplex_at(member(list[i], "simplex", at), at + ".simplex");
      if (s.size() != 3) format_error(at + ".simplex", "Chern cocycles live on triangles");
      auto index = base.find(s);
      if (!index) semantic_error(at + ".simplex", "unknown triangle " + simplex_text(s));
      if (seen[*index]) semantic_error(at, "triangle listed twice");
      seen[*index] = true;
      auto v = vector_at(member(list[i], "vector", at), n, at + ".vector");
      if (!is_integral(v)) semantic_error(at + ".vector", "Chern cocycles are integral");
      std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(*index * n));
    }
    TwistedCochain c(dual, 2, Ring::Z, std::move(values));
    if (!coboundary(c).is_zero()) semantic_error("chern.cocycle", "cocycle violation: the Chern cochain is not a cocycle");
    return c;
  }

  const Json& coords = j["coordinates"];
  allow_keys(coords, {"free", "torsion"}, "chern.coordinates");
  auto group = chern_group(data);
  ClassCoordinates cc;
  cc.ring = Ring::Z;
  const Json empty = Json::array();
  cc.free = vector_at(coords.contains("free") ? coords["free"] : empty, group.free_rank(), "chern.coordinates.free");
  if (!is_integral(cc.free)) semantic_error("chern.coordinates.free", "Chern coordinates are integers");
  const Json& torsion = coords.contains("torsion") ? coords["torsion"] : empty;
  array_at(torsion, "chern.coordinates.torsion");
  if (torsion.size() != group.torsion().size())
    semantic_error("chern.coordinates.torsion", "expected " + std::to_string(group.torsion().size()) + " torsion residues");
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    Integer r = integer_at(torsion[i], "chern.coordinates.torsion[" + std::to_string(i) + "]");
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), group.torsion()[i].get_mpz_t());
    cc.torsion.push_back(r);
    cc.torsion_orders.push_back(group.torsion()[i]);
  }
  return group.representative(cc);
}

const std::set<std::string> task_names{"validate", "cohomology", "radiance", "obstruction", "realizable", "d2"};

std::vector<Task> parse_tasks(const Json& j) {
  std::vector<Task> out;
  array_at(j, "tasks");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = "tasks[" + std::to_string(i) + "]";
    if (!j[i].is_object()) format_error(at, "expected an object");
    const Json& name = member(j[i], "task", at);
    if (!name.is_string() || !task_names.count(name.get<std::string>()))
      format_error(at + ".task", "unknown task " + name.dump());
    Task t{name.get<std::string>(), Json::object()};
    for (auto it = j[i].begin(); it != j[i].end(); ++it)
      if (it.key() != "task") t.options[it.key()] = it.value();
    out.push_back(std::move(t));
  }
  return out;
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string message = e.what();
    auto colon = message.rfind(": ");
    throw ProblemError(Kind::Syntax, line_column(text, e.byte), colon == std::string::npos ? message : message.substr(colon + 2));
  }
  allow_keys(doc, {"complex", "system", "affine", "atlas", "chern", "tasks"}, "document");
  auto complex = parse_complex(member(doc, "complex", "document"));
  auto data = doc.contains("atlas") ? parse_atlas(doc, complex) : parse_system(doc, complex);
  ProblemFile out{complex, std::move(data), std::nullopt, {}};
  if (doc.contains("chern")) out.chern = parse_chern(doc["chern"], out.data);
  if (doc.contains("tasks")) out.tasks = parse_tasks(doc["tasks"]);
  return out;
}

ProblemFile read_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError(Kind::Syntax, path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

std::vector<Simplex> facets(const SimplicialComplex& complex) {
  std::vector<Simplex> out;
  for (int p = 0; p <= complex.dimension(); ++p)
    for (const auto& s : complex.simplices(p)) {
      bool maximal = true;
      if (p < complex.dimension()) {
        for (std::size_t v = 0; v < complex.vertex_count() && maximal; ++v) {
          if (std::binary_search(s.begin(), s.end(), v)) continue;
          Simplex bigger = s;
          bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), v), v);
          if (complex.contains(bigger)) maximal = false;
        }
      }
      if (maximal) out.push_back(s);
    }
  return out;
}

namespace {

Json strings(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    out.push_back(row);
  }
  return out;
}

}  // namespace

namespace {

bool flat(const Json& j, int depth) {
  if (j.is_object()) return j.empty();
  if (!j.is_array()) return true;
  if (depth == 0) return false;
  for (const auto& e : j)
    if (!flat(e, depth - 1) || e.is_object()) return false;
  return true;
}

void format_into(const Json& j, std::size_t indent, std::string& out) {
  if (flat(j, 2)) {
    if (!j.is_array()) {
      out += j.dump();
      return;
    }
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      format_into(j[i], indent, out);
    }
    out += ']';
    return;
  }
  const std::string pad(indent + 2, ' ');
  const bool object = j.is_object();
  out += object ? "{\n" : "[\n";
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i) {
    out += pad;
    if (object) out += Json(it.key()).dump() + ": ";
    format_into(it.value(), indent + 2, out);
    out += i + 1 < j.size() ? ",\n" : "\n";
  }
  out += std::string(indent, ' ') + (object ? "}" : "]");
}

}  // namespace

std::string format_json(const Json& j) {
  std::string out;
  format_into(j, 0, out);
  return out;
}

Json cochain_to_json(const TwistedCochain& c) {
  Json out = Json::array();
  const auto& simplices = c.system().base().simplices(c.degree());
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    auto v = c.value(s);
    bool zero = true;
    for (const auto& x : v) zero &= x == 0;
    if (zero) continue;
    out.push_back(Json{{"simplex", simplices[s]}, {"value", strings(v)}});
  }
  return out;
}

Json serialize_problem(const ProblemFile& problem) {
  const auto& data = problem.data;
  const auto& base = data.base();
  Json doc;
  doc["complex"] = Json{{"vertices", base.vertex_count()}, {"facets", facets(base)}};
  Json transports = Json::array();
  const IntMatrix id = IntMatrix::identity(data.rank());
  for (std::size_t e = 0; e < base.count(1); ++e)
    if (!(data.linear().transport(e) == id))
      transports.push_back(Json{{"edge", base.simplices(1)[e]}, {"matrix", matrix_json(data.linear().transport(e))}});
  doc["system"] = Json{{"rank", data.rank()}, {"transports", transports}};
  Json translations = Json::array();
  for (const auto& entry : cochain_to_json(data.translations()))
    translations.push_back(Json{{"edge", entry["simplex"]}, {"vector", entry["value"]}});
  doc["affine"] = Json{{"translations", translations}};
  if (problem.chern) {
    Json cocycle = Json::array();
    for (const auto& entry : cochain_to_json(*problem.chern))
      cocycle.push_back(Json{{"simplex", entry["simplex"]}, {"vector", entry["value"]}});
    doc["chern"] = Json{{"cocycle", cocycle}};
  }
  if (!problem.tasks.empty()) {
    Json tasks = Json::array();
    for (const auto& t : problem.tasks) {
      Json entry{{"task", t.name}};
      for (auto it = t.options.begin(); it != t.options.end(); ++it) entry[it.key()] = it.value();
      tasks.push_back(entry);
    }
    doc["tasks"] = tasks;
  }
  return doc;
}

}  // namespace affinelag
