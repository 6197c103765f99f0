#include <affinelag/local_system.hpp>

#include <sstream>
#include <stdexcept>

namespace affinelag {

LocalSystem::LocalSystem(std::shared_ptr<const SimplicialComplex> base, std::size_t rank, std::vector<IntMatrix> transports)
    : base_(std::move(base)), rank_(rank), transports_(std::move(transports)) {
  if (!base_) throw std::invalid_argument("LocalSystem: null base complex");
  if (rank_ == 0) throw std::invalid_argument("LocalSystem: rank must be positive");
  if (transports_.size() != base_->count(1))
    throw std::invalid_argument("LocalSystem: expected one transport per edge");
}

LocalSystem LocalSystem::trivial(std::shared_ptr<const SimplicialComplex> base, std::size_t rank) {
  if (!base) throw std::invalid_argument("LocalSystem: null base complex");
  std::vector<IntMatrix> transports(base->count(1), IntMatrix::identity(rank));
  return LocalSystem(std::move(base), rank, std::move(transports));
}

LocalSystem LocalSystem::from_edges(std::shared_ptr<const SimplicialComplex> base, std::size_t rank,
                                    const std::vector<std::pair<Simplex, IntMatrix>>& edges) {
  if (!base) throw std::invalid_argument("LocalSystem: null base complex");
  std::vector<IntMatrix> transports(base->count(1), IntMatrix::identity(rank));
  for (const auto& [edge, matrix] : edges) {
    if (edge.size() != 2) throw std::invalid_argument("LocalSystem: transports live on edges");
    transports[base->index_of(edge)] = matrix;
  }
  return LocalSystem(std::move(base), rank, std::move(transports));
}

const IntMatrix& LocalSystem::transport(std::size_t i, std::size_t j) const {
  return transports_[base_->index_of({i, j})];
}

IntMatrix LocalSystem::transport_between(std::size_t from, std::size_t to) const {
  if (from == to) return IntMatrix::identity(rank_);
  if (from < to) return transport(from, to);
  return unimodular_inverse(transport(to, from));
}

bool LocalSystem::is_trivial() const {
  const IntMatrix id = IntMatrix::identity(rank_);
  for (const auto& t : transports_)
    if (!(t == id)) return false;
  return true;
}

bool same_system(const LocalSystem& a, const LocalSystem& b) {
  if (&a == &b) return true;
  if (a.rank() != b.rank()) return false;
  if (a.base_ptr() != b.base_ptr() && !(a.base() == b.base())) return false;
  return a.transports() == b.transports();
}

bool is_dual_pair(const LocalSystem& a, const LocalSystem& b) {
  if (a.rank() != b.rank()) return false;
  if (a.base_ptr() != b.base_ptr() && !(a.base() == b.base())) return false;
  // a_e^T b_e == I on every edge, entry by entry.
  const std::size_t n = a.rank();
  Integer sum;
  for (std::size_t e = 0; e < a.transports().size(); ++e) {
    const IntMatrix& x = a.transport(e);
    const IntMatrix& y = b.transport(e);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        sum = 0;
        for (std::size_t k = 0; k < n; ++k) mpz_addmul(sum.get_mpz_t(), x(k, r).get_mpz_t(), y(k, c).get_mpz_t());
        if (sum != (r == c ? 1 : 0)) return false;
      }
  }
  return true;
}

std::string SystemViolation::message() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < simplex.size(); ++i) os << (i ? "," : "") << simplex[i];
  os << ']';
  switch (kind) {
    case Kind::WrongShape: return "transport on edge " + os.str() + " has the wrong shape";
    case Kind::NotUnimodular: return "transport on edge " + os.str() + " is non-unimodular";
    case Kind::CocycleFailure: return "cocycle condition fails on triangle " + os.str();
  }
  return {};
}

std::optional<SystemViolation> validate_cocycle(const LocalSystem& system) {
  using Kind = SystemViolation::Kind;
  const auto& base = system.base();
  const auto& edges = base.simplices(1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& m = system.transport(e);
    if (m.rows() != system.rank() || m.cols() != system.rank()) return SystemViolation{Kind::WrongShape, edges[e]};
    if (!is_unimodular(m)) return SystemViolation{Kind::NotUnimodular, edges[e]};
  }
  for (const auto& t : base.simplices(2)) {
    if (!(system.transport(t[0], t[1]) * system.transport(t[1], t[2]) == system.transport(t[0], t[2])))
      return SystemViolation{Kind::CocycleFailure, t};
  }
  return std::nullopt;
}

LocalSystem dual_system(const LocalSystem& system) {
  std::vector<IntMatrix> transports;
  transports.reserve(system.transports().size());
  for (const auto& m : system.transports()) transports.push_back(inverse_transpose(m));
  return LocalSystem(system.base_ptr(), system.rank(), std::move(transports));
}

LocalSystem direct_sum(const LocalSystem& first, const LocalSystem& second) {
  if (first.base_ptr() != second.base_ptr() && !(first.base() == second.base()))
    throw std::invalid_argument("direct_sum: systems live on different complexes");
  std::vector<IntMatrix> transports;
  transports.reserve(first.transports().size());
  for (std::size_t e = 0; e < first.transports().size(); ++e)
    transports.push_back(block_diagonal(first.transport(e), second.transport(e)));
  return LocalSystem(first.base_ptr(), first.rank() + second.rank(), std::move(transports));
}

LocalSystem pullback_product(const ProductMap& product, const LocalSystem& first, const LocalSystem& second) {
  if (first.base().vertex_count() != product.first_vertex_count ||
      second.base().vertex_count() != product.second_vertex_count)
    throw std::invalid_argument("pullback_product: factor systems do not match the product");
  const auto& edges = product.complex->simplices(1);
  std::vector<IntMatrix> transports;
  transports.reserve(edges.size());
  for (const auto& edge : edges) {
    const auto [u0, v0] = product.projections[edge[0]];
    const auto [u1, v1] = product.projections[edge[1]];
    if (u0 > u1 || v0 > v1)
      throw std::logic_error("pullback_product: product edge does not project monotonically");
    IntMatrix a = u0 == u1 ? IntMatrix::identity(first.rank()) : first.transport(u0, u1);
    IntMatrix b = v0 == v1 ? IntMatrix::identity(second.rank()) : second.transport(v0, v1);
    transports.push_back(block_diagonal(a, b));
  }
  return LocalSystem(product.complex, first.rank() + second.rank(), std::move(transports));
}

EdgePath edge_path(const LocalSystem& system, std::vector<std::size_t> vertices) {
  if (vertices.empty()) throw std::invalid_argument("edge_path: empty path");
  IntMatrix composite = IntMatrix::identity(system.rank());
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
    std::size_t a = std::min(vertices[k], vertices[k + 1]);
    std::size_t b = std::max(vertices[k], vertices[k + 1]);
    if (a == b || !system.base().contains({a, b}))
      throw std::invalid_argument("edge_path: consecutive vertices are not joined by an edge");
    composite = composite * system.transport_between(vertices[k], vertices[k + 1]);
  }
  return {std::move(vertices), std::move(composite)};
}

}  // namespace affinelag
