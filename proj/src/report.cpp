#include <affinelag/report.hpp>

#include <sstream>

namespace affinelag {

namespace {

Json strings(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json strings(std::span<const Integer> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Ring ring_of(const Task& task, const RunOptions& options, Ring fallback) {
  if (options.ring) return *options.ring;
  if (!task.options.contains("ring")) return fallback;
  const Json& r = task.options["ring"];
  if (r == "Z") return Ring::Z;
  if (r == "Q") return Ring::Q;
  throw TaskError("ring must be \"Z\" or \"Q\"");
}

bool flag_of(const Task& task, const char* key, bool cli) {
  if (cli) return true;
  if (!task.options.contains(key)) return false;
  if (!task.options[key].is_boolean()) throw TaskError(std::string("option \"") + key + "\" must be true or false");
  return task.options[key].get<bool>();
}

int degree_option(const Task& task, int fallback) {
  if (!task.options.contains("degree")) return fallback;
  if (!task.options["degree"].is_number_integer()) throw TaskError("option \"degree\" must be an integer");
  return task.options["degree"].get<int>();
}

void check_options(const Task& task, std::initializer_list<const char*> keys) {
  for (auto it = task.options.begin(); it != task.options.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known |= it.key() == k;
    if (!known) throw TaskError("task \"" + task.name + "\" has no option \"" + it.key() + "\"");
  }
}

Json run_validate(const Task& task, const ProblemFile& problem) {
  check_options(task, {});
  const auto& data = problem.data;
  Json counts = Json::array();
  for (int p = 0; p <= data.base().dimension(); ++p) counts.push_back(data.base().count(p));
  return Json{{"task", "validate"},
              {"valid", true},
              {"vertices", data.base().vertex_count()},
              {"simplices", counts},
              {"euler_characteristic", euler_characteristic(data.base())},
              {"rank", data.rank()},
              {"trivial_holonomy", data.linear().is_trivial()},
              {"zero_translations", data.translations().is_zero()},
              {"chern_cocycle", problem.chern.has_value()}};
}

Json run_cohomology(const Task& task, const ProblemFile& problem, const RunOptions& options) {
  check_options(task, {"ring", "system", "degrees"});
  const Ring ring = ring_of(task, options, Ring::Z);
  std::string which = "linear";
  if (task.options.contains("system")) {
    if (!task.options["system"].is_string()) throw TaskError("option \"system\" must be a string");
    which = task.options["system"].get<std::string>();
  }
  std::shared_ptr<const LocalSystem> system;
  if (which == "linear") {
    system = problem.data.linear_ptr();
  } else if (which == "dual") {
    system = std::make_shared<const LocalSystem>(dual_system(problem.data.linear()));
  } else if (which == "trivial") {
    system = trivial_line(problem.data.linear().base_ptr());
  } else {
    throw TaskError("option \"system\" must be \"linear\", \"dual\" or \"trivial\"");
  }
  std::vector<int> degrees;
  if (task.options.contains("degrees")) {
    if (!task.options["degrees"].is_array()) throw TaskError("option \"degrees\" must be an array");
    for (const auto& d : task.options["degrees"]) {
      if (!d.is_number_integer()) throw TaskError("option \"degrees\" must hold integers");
      degrees.push_back(d.get<int>());
    }
  } else {
    for (int p = 0; p <= problem.data.base().dimension(); ++p) degrees.push_back(p);
  }
  Json groups = Json::array();
  for (int p : degrees) {
    auto h = cohomology(system, p, ring);
    Json g = shape_json(GroupShape::of(h));
    if (options.witness) {
      Json basis = Json::array();
      for (const auto& c : h.basis_cocycles()) basis.push_back(cochain_to_json(c));
      g["basis"] = basis;
    }
    groups.push_back(g);
  }
  return Json{{"task", "cohomology"}, {"system", which}, {"rank", system->rank()}, {"ring", to_string(ring)}, {"groups", groups}};
}

Json run_radiance(const Task& task, const ProblemFile& problem, const RunOptions& options) {
  check_options(task, {});
  auto r = radiance_class(problem.data);
  auto test = is_radiant(problem.data);
  Json out{{"task", "radiance"},
           {"group", shape_json(GroupShape::of(r.group))},
           {"coordinates", coordinates_json(r.coordinates)},
           {"radiant", test.radiant},
           {"strongly_integral", is_strongly_integral(problem.data)}};
  if (options.witness && test.witness) out["witness"] = cochain_to_json(*test.witness);
  return out;
}

Json run_obstruction(const Task& task, const ProblemFile& problem, const RunOptions& options) {
  check_options(task, {"all_basis"});
  const bool all_basis = flag_of(task, "all_basis", options.all_basis);
  if (!all_basis && !problem.chern)
    throw TaskError("obstruction needs a \"chern\" section or --all-basis");
  ObstructionMap map(problem.data);
  const auto& h2 = map.h2();
  Json classes = Json::array();
  bool all_lagrangian = true;
  auto add = [&](const std::string& label, const TwistedCochain& c) {
    auto report = map(c);
    all_lagrangian &= report.is_lagrangian;
    Json entry{{"class", label},
               {"chern_coordinates", coordinates_json(h2.coordinates(c))},
               {"dd_class", coordinates_json(report.dd_class)},
               {"is_lagrangian", report.is_lagrangian}};
    if (options.witness) entry["cocycle"] = cochain_to_json(c);
    classes.push_back(entry);
  };
  if (problem.chern) add("chern", *problem.chern);
  if (all_basis)
    for (std::size_t k = 0; k < h2.basis_cocycles().size(); ++k) add("basis " + std::to_string(k), h2.basis_cocycles()[k]);
  return Json{{"task", "obstruction"},
              {"h2", shape_json(GroupShape::of(h2))},
              {"h3", shape_json(GroupShape::of(map.h3()))},
              {"classes", classes},
              {"all_lagrangian", all_lagrangian}};
}

Json run_realizable(const Task& task, const ProblemFile& problem) {
  check_options(task, {});
  auto sub = realizable_subgroup(problem.data);
  Json pairing = Json::array();
  for (std::size_t r = 0; r < sub.pairing.rows(); ++r) pairing.push_back(strings(sub.pairing.row(r)));
  Json kernel = Json::array();
  for (const auto& v : sub.kernel_basis) kernel.push_back(strings(std::span<const Integer>(v)));
  std::string summary = sub.entire_group() ? "entire group" : "proper subgroup of corank " + std::to_string(sub.index_or_corank);
  return Json{{"task", "realizable"},
              {"h2", shape_json(sub.h2)},
              {"h3", shape_json(sub.h3)},
              {"pairing", pairing},
              {"kernel_basis", kernel},
              {"kernel_rank", sub.kernel_basis.size()},
              {"corank", sub.index_or_corank},
              {"includes_all_torsion", sub.includes_all_torsion},
              {"entire_group", sub.entire_group()},
              {"summary", summary}};
}

Json run_d2(const Task& task, const ProblemFile& problem) {
  check_options(task, {"degree"});
  if (!problem.chern) throw TaskError("d2 needs a \"chern\" section");
  const int p = degree_option(task, 1);
  const auto& linear = problem.data.linear_ptr();
  auto source = cohomology(linear, p, Ring::Z);
  auto target = cohomology(trivial_line(linear->base_ptr()), p + 2, Ring::Z);

  Json images = Json::array();
  IntMatrix matrix(target.free_rank(), source.free_rank());
  for (std::size_t k = 0; k < source.basis_cocycles().size(); ++k) {
    auto image = d2_differential(linear, *problem.chern, source.basis_cocycles()[k]);
    images.push_back(Json{{"source", "basis " + std::to_string(k)}, {"image", coordinates_json(image)}});
    if (k < source.free_rank())
      for (std::size_t r = 0; r < image.free.size(); ++r) matrix(r, k) = image.free[r].get_num();
  }
  if (p == 1 && is_integral(problem.data.translations().values())) {
    auto image = d2_differential(linear, *problem.chern, problem.data.translations().with_ring(Ring::Z));
    images.push_back(Json{{"source", "radiance"}, {"image", coordinates_json(image)}});
  }
  Json rows = Json::array();
  for (std::size_t r = 0; r < matrix.rows(); ++r) rows.push_back(strings(matrix.row(r)));
  const bool iso = source.torsion().empty() && target.torsion().empty() && matrix.rows() == matrix.cols() &&
                   (matrix.rows() == 0 || is_unimodular(matrix));
  return Json{{"task", "d2"},
              {"degree", p},
              {"source", shape_json(GroupShape::of(source))},
              {"target", shape_json(GroupShape::of(target))},
              {"images", images},
              {"matrix", rows},
              {"isomorphism", iso}};
}

bool is_inline(const Json& j) {
  if (j.is_object()) return j.empty();
  if (j.is_array()) {
    for (const auto& e : j)
      if (!is_inline(e) || e.is_object()) return false;
  }
  return true;
}

std::string inline_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object()) return "{}";
  if (j.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + inline_text(j[i]);
    return out + "]";
  }
  return j.dump();
}

void render(const Json& j, std::size_t indent, std::ostringstream& os) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (is_inline(it.value())) {
        os << pad << it.key() << ": " << inline_text(it.value()) << '\n';
      } else {
        os << pad << it.key() << ":\n";
        render(it.value(), indent + 2, os);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (is_inline(e)) {
        os << pad << "- " << inline_text(e) << '\n';
        continue;
      }
      std::ostringstream item;
      render(e, indent + 2, item);
      std::string text = item.str();
      os << pad << "- " << text.substr(std::min(text.size(), indent + 2));
    }
  } else {
    os << pad << inline_text(j) << '\n';
  }
}

}  // namespace

Json shape_json(const GroupShape& shape) {
  return Json{{"degree", shape.degree},
              {"ring", to_string(shape.ring)},
              {"free_rank", shape.free_rank},
              {"torsion", strings(std::span<const Integer>(shape.torsion))}};
}

Json coordinates_json(const ClassCoordinates& c) {
  return Json{{"free", strings(std::span<const Rational>(c.free))},
              {"torsion", strings(std::span<const Integer>(c.torsion))},
              {"torsion_orders", strings(std::span<const Integer>(c.torsion_orders))}};
}

Json run_task(const Task& task, const ProblemFile& problem, const RunOptions& options) {
  if (task.name == "validate") return run_validate(task, problem);
  if (task.name == "cohomology") return run_cohomology(task, problem, options);
  if (task.name == "radiance") return run_radiance(task, problem, options);
  if (task.name == "obstruction") return run_obstruction(task, problem, options);
  if (task.name == "realizable") return run_realizable(task, problem);
  if (task.name == "d2") return run_d2(task, problem);
  throw TaskError("unknown task \"" + task.name + "\"");
}

Json run_command(const std::string& command, const ProblemFile& problem, const RunOptions& options) {
  Json results = Json::array();
  for (const auto& task : problem.tasks)
    if (task.name == command) results.push_back(run_task(task, problem, options));
  if (results.empty()) results.push_back(run_task(Task{command, Json::object()}, problem, options));
  return Json{{"command", command}, {"results", results}};
}

std::string render_text(const Json& report) {
  std::ostringstream os;
  render(report, 0, os);
  return os.str();
}

namespace {

const IntMatrix hyperbolic{{2, 1}, {1, 1}};

ProblemFile wrap(IntegralAffineData data) {
  return ProblemFile{data.linear().base_ptr(), std::move(data), std::nullopt, {}};
}

}  // namespace

std::vector<std::string> model_names() {
  return {"circle_scale1", "circle_scale2", "circle:<q>", "standard_torus1", "standard_torus2", "standard_torus3",
          "y_hyperbolic", "y_unipotent", "z:<n1>,<n2>,...", "hopf"};
}

ProblemFile generate_problem(const std::string& name) {
  if (name == "circle_scale1") return wrap(models::circle(1));
  if (name == "circle_scale2") return wrap(models::circle(2));
  if (name.rfind("circle:", 0) == 0) {
    try {
      return wrap(models::circle(parse_rational(name.substr(7))));
    } catch (const std::invalid_argument&) {
      throw TaskError("bad scale in model \"" + name + "\"");
    }
  }
  if (name.rfind("standard_torus", 0) == 0 && name.size() == 15 && name[14] >= '1' && name[14] <= '3')
    return wrap(models::standard_torus(static_cast<std::size_t>(name[14] - '0')));
  if (name == "y_hyperbolic") return wrap(models::y_model(hyperbolic, hyperbolic, hyperbolic));
  if (name == "y_unipotent") return wrap(models::y_model(models::unipotent(1), hyperbolic, hyperbolic));
  if (name.rfind("z:", 0) == 0) {
    std::vector<long> n;
    std::stringstream ss(name.substr(2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        n.push_back(parse_integer(item).get_si());
      } catch (const std::invalid_argument&) {
        throw TaskError("bad entry in model \"" + name + "\"");
      }
    }
    if (n.empty()) throw TaskError("model \"" + name + "\" needs at least one factor");
    return wrap(models::z_model(n));
  }
  if (name == "hopf") {
    auto sphere = std::make_shared<const SimplicialComplex>(complexes::sphere());
    ProblemFile problem = wrap(IntegralAffineData(std::make_shared<const LocalSystem>(LocalSystem::trivial(sphere, 1))));
    problem.chern = chern_group(problem.data).basis_cocycles().at(0);
    problem.tasks.push_back(Task{"d2", Json{{"degree", 0}}});
    return problem;
  }
  throw TaskError("unknown model \"" + name + "\"");
}

}  // namespace affinelag
