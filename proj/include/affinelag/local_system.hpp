#pragma once

#include <affinelag/matrix.hpp>
#include <affinelag/simplicial.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace affinelag {

/// Flat GL(n, Z) coefficient system on a simplicial complex.
///
/// Each edge [i, j] (i < j) carries an n x n integer matrix read as the
/// transport stalk(j) -> stalk(i). A valid system has unimodular transports and
/// satisfies transport(i,j) * transport(j,k) == transport(i,k) on every
/// triangle [i, j, k].
class LocalSystem {
 public:
  LocalSystem(std::shared_ptr<const SimplicialComplex> base, std::size_t rank, std::vector<IntMatrix> transports);

  static LocalSystem trivial(std::shared_ptr<const SimplicialComplex> base, std::size_t rank);

  /// Edges absent from `edges` get the identity.
  static LocalSystem from_edges(std::shared_ptr<const SimplicialComplex> base, std::size_t rank,
                                const std::vector<std::pair<Simplex, IntMatrix>>& edges);

  const SimplicialComplex& base() const { return *base_; }
  const std::shared_ptr<const SimplicialComplex>& base_ptr() const { return base_; }
  std::size_t rank() const { return rank_; }

  /// Transport on the edge with the given index in base().simplices(1).
  const IntMatrix& transport(std::size_t edge_index) const { return transports_[edge_index]; }
  /// Transport on the edge [i, j], i < j.
  const IntMatrix& transport(std::size_t i, std::size_t j) const;
  const std::vector<IntMatrix>& transports() const { return transports_; }

  /// Map stalk(to) -> stalk(from) along the edge joining two adjacent vertices,
  /// in either orientation. Identity when from == to.
  IntMatrix transport_between(std::size_t from, std::size_t to) const;

  bool is_trivial() const;

 private:
  std::shared_ptr<const SimplicialComplex> base_;
  std::size_t rank_;
  std::vector<IntMatrix> transports_;
};

/// Structural equality: same base complex, rank and transports.
bool same_system(const LocalSystem& a, const LocalSystem& b);

/// True when b's transports are the inverse transposes of a's.
bool is_dual_pair(const LocalSystem& a, const LocalSystem& b);

struct SystemViolation {
  enum class Kind { WrongShape, NotUnimodular, CocycleFailure };
  Kind kind;
  Simplex simplex;
  std::string message() const;
};

std::optional<SystemViolation> validate_cocycle(const LocalSystem& system);

/// Same base, transports replaced by inverse transposes.
LocalSystem dual_system(const LocalSystem& system);

/// Block-diagonal sum; throws std::invalid_argument on different bases.
LocalSystem direct_sum(const LocalSystem& first, const LocalSystem& second);

/// System on the product complex whose edge transport is
/// diag(first(projected edge), second(projected edge)), identity on collapsed
/// projections.
LocalSystem pullback_product(const ProductMap& product, const LocalSystem& first, const LocalSystem& second);

/// Walk along consecutive adjacent vertices with the composite transport
/// stalk(last) -> stalk(first).
struct EdgePath {
  std::vector<std::size_t> vertices;
  IntMatrix composite;
};

EdgePath edge_path(const LocalSystem& system, std::vector<std::size_t> vertices);

}  // namespace affinelag
