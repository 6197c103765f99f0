#include <affinelag/simplicial.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace affinelag {

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : s) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {
constexpr std::size_t kMissing = std::numeric_limits<std::size_t>::max();

std::string format_simplex(const Simplex& s) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ']';
  return os.str();
}
}  // namespace

std::string ComplexViolation::message() const {
  switch (kind) {
    case Kind::VertexOutOfRange: return "simplex " + format_simplex(simplex) + " uses a vertex out of range";
    case Kind::NotIncreasing: return "simplex " + format_simplex(simplex) + " is not strictly increasing";
    case Kind::Duplicate: return "simplex " + format_simplex(simplex) + " is listed twice";
    case Kind::MissingFace: return "simplex " + format_simplex(simplex) + " is missing its face " + format_simplex(face);
  }
  return {};
}

SimplicialComplex SimplicialComplex::from_simplices(std::size_t vertex_count, std::vector<Simplex> simplices) {
  SimplicialComplex k;
  k.vertex_count_ = vertex_count;
  if (vertex_count > 0) {
    k.by_dimension_.resize(1);
    for (std::size_t v = 0; v < vertex_count; ++v) k.by_dimension_[0].push_back({v});
  }
  for (auto& s : simplices) {
    if (s.empty()) throw std::invalid_argument("from_simplices: empty simplex");
    if (s.size() == 1 && s[0] < vertex_count) continue;
    if (k.by_dimension_.size() < s.size()) k.by_dimension_.resize(s.size());
    k.by_dimension_[s.size() - 1].push_back(std::move(s));
  }
  for (auto& list : k.by_dimension_) std::sort(list.begin(), list.end());
  k.rebuild_index();
  return k;
}

SimplicialComplex SimplicialComplex::from_facets(std::size_t vertex_count, const std::vector<Simplex>& facets) {
  std::set<Simplex> all;
  for (const auto& f : facets) {
    if (f.empty()) throw std::invalid_argument("from_facets: empty simplex");
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] >= vertex_count) throw std::invalid_argument("from_facets: vertex out of range in " + format_simplex(f));
      if (i > 0 && f[i - 1] >= f[i]) throw std::invalid_argument("from_facets: simplex " + format_simplex(f) + " is not strictly increasing");
    }
    const std::size_t n = f.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) face.push_back(f[i]);
      all.insert(std::move(face));
    }
  }
  return from_simplices(vertex_count, std::vector<Simplex>(all.begin(), all.end()));
}

void SimplicialComplex::rebuild_index() {
  index_.assign(by_dimension_.size(), {});
  for (std::size_t p = 0; p < by_dimension_.size(); ++p) {
    index_[p].reserve(by_dimension_[p].size());
    for (std::size_t i = 0; i < by_dimension_[p].size(); ++i) index_[p].emplace(by_dimension_[p][i], i);
  }
  faces_.assign(by_dimension_.size(), {});
  for (std::size_t p = 1; p < by_dimension_.size(); ++p) {
    auto& table = faces_[p];
    table.reserve(by_dimension_[p].size() * (p + 1));
    Simplex f;
    for (const auto& s : by_dimension_[p])
      for (std::size_t i = 0; i <= p; ++i) {
        f.assign(s.begin(), s.end());
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        auto it = index_[p - 1].find(f);
        table.push_back(it == index_[p - 1].end() ? kMissing : it->second);
      }
  }
}

std::size_t SimplicialComplex::face(int p, std::size_t index, std::size_t i) const {
  if (p < 1 || p > dimension() || index >= by_dimension_[p].size() || i > static_cast<std::size_t>(p))
    throw std::out_of_range("SimplicialComplex::face: no such simplex");
  std::size_t f = faces_[p][index * (p + 1) + i];
  if (f == kMissing) {
    Simplex s = by_dimension_[p][index];
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
    throw std::out_of_range("simplex " + format_simplex(s) + " is not in the complex");
  }
  return f;
}

std::size_t SimplicialComplex::count(int p) const {
  if (p < 0 || p > dimension()) return 0;
  return by_dimension_[p].size();
}

const std::vector<Simplex>& SimplicialComplex::simplices(int p) const {
  static const std::vector<Simplex> none;
  if (p < 0 || p > dimension()) return none;
  return by_dimension_[p];
}

std::optional<std::size_t> SimplicialComplex::find(const Simplex& s) const {
  if (s.empty() || s.size() > index_.size()) return std::nullopt;
  const auto& map = index_[s.size() - 1];
  auto it = map.find(s);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplicialComplex::index_of(const Simplex& s) const {
  auto i = find(s);
  if (!i) throw std::out_of_range("simplex " + format_simplex(s) + " is not in the complex");
  return *i;
}

std::optional<ComplexViolation> SimplicialComplex::validate() const {
  using Kind = ComplexViolation::Kind;
  for (const auto& list : by_dimension_) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Simplex& s = list[i];
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] >= vertex_count_) return ComplexViolation{Kind::VertexOutOfRange, s, {}};
        if (k > 0 && s[k - 1] >= s[k]) return ComplexViolation{Kind::NotIncreasing, s, {}};
      }
      if (i > 0 && list[i - 1] == s) return ComplexViolation{Kind::Duplicate, s, {}};
      if (s.size() < 2) continue;
      for (std::size_t k = 0; k < s.size(); ++k) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
        if (!contains(face)) return ComplexViolation{Kind::MissingFace, s, face};
      }
    }
  }
  return std::nullopt;
}

long long euler_characteristic(const SimplicialComplex& k) {
  long long chi = 0;
  for (int p = 0; p <= k.dimension(); ++p) chi += (p % 2 ? -1 : 1) * static_cast<long long>(k.count(p));
  return chi;
}

Simplex ProductMap::project(const Simplex& s, int factor) const {
  Simplex out;
  for (auto v : s) {
    std::size_t w = factor == 0 ? projections[v].first : projections[v].second;
    if (out.empty() || out.back() != w) out.push_back(w);
  }
  return out;
}

ProductMap product_complex(const SimplicialComplex& first, const SimplicialComplex& second) {
  ProductMap map;
  map.first_vertex_count = first.vertex_count();
  map.second_vertex_count = second.vertex_count();
  const std::size_t n2 = second.vertex_count();
  for (std::size_t u = 0; u < first.vertex_count(); ++u)
    for (std::size_t v = 0; v < n2; ++v) map.projections.emplace_back(u, v);

  // Each cell sigma x tau contributes its monotone lattice paths; their faces
  // supply the lower-dimensional simplices.
  std::set<Simplex> top;
  for (int p = 0; p <= first.dimension(); ++p)
    for (const auto& sigma : first.simplices(p))
      for (int q = 0; q <= second.dimension(); ++q)
        for (const auto& tau : second.simplices(q)) {
          Simplex path;
          std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t j) {
            path.push_back(sigma[i] * n2 + tau[j]);
            if (i + 1 == sigma.size() && j + 1 == tau.size()) {
              top.insert(path);
            } else {
              if (i + 1 < sigma.size()) walk(i + 1, j);
              if (j + 1 < tau.size()) walk(i, j + 1);
            }
            path.pop_back();
          };
          walk(0, 0);
        }
  map.complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_facets(first.vertex_count() * n2, std::vector<Simplex>(top.begin(), top.end())));
  return map;
}

namespace complexes {

SimplicialComplex point() { return SimplicialComplex::from_facets(1, {{0}}); }

SimplicialComplex interval() { return SimplicialComplex::from_facets(2, {{0, 1}}); }

SimplicialComplex circle() { return SimplicialComplex::from_facets(3, {{0, 1}, {1, 2}, {0, 2}}); }

SimplicialComplex sphere() {
  return SimplicialComplex::from_facets(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

SimplicialComplex projective_plane() {
  return SimplicialComplex::from_facets(6, {{0, 1, 3}, {0, 1, 5}, {0, 2, 4}, {0, 2, 5}, {0, 3, 4},
                                            {1, 2, 3}, {1, 2, 4}, {1, 4, 5}, {2, 3, 5}, {3, 4, 5}});
}

}  // namespace complexes

}  // namespace affinelag
