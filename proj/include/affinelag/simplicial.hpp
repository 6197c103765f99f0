#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace affinelag {

/// Vertex tuple of an ordered simplex; valid simplices are strictly increasing.
using Simplex = std::vector<std::size_t>;

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

struct ComplexViolation {
  enum class Kind { VertexOutOfRange, NotIncreasing, Duplicate, MissingFace };
  Kind kind;
  Simplex simplex;
  /// The absent face when kind == MissingFace.
  Simplex face;
  std::string message() const;
};

/// Finite ordered abstract simplicial complex on vertices 0..vertex_count-1.
/// Every vertex is a 0-simplex. Simplices of each dimension are kept in
/// lexicographic order, which fixes the cochain bases used downstream.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Takes the listed simplices as given (no closure); see validate().
  static SimplicialComplex from_simplices(std::size_t vertex_count, std::vector<Simplex> simplices);

  /// Downward closure of `facets`. Throws std::invalid_argument on malformed tuples.
  static SimplicialComplex from_facets(std::size_t vertex_count, const std::vector<Simplex>& facets);

  std::size_t vertex_count() const { return vertex_count_; }
  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(by_dimension_.size()) - 1; }
  std::size_t count(int p) const;
  const std::vector<Simplex>& simplices(int p) const;

  std::optional<std::size_t> find(const Simplex& s) const;
  /// Index of `s` within simplices(s.size() - 1); throws std::out_of_range if absent.
  std::size_t index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return find(s).has_value(); }

  /// Index in dimension p - 1 of the face of the p-simplex `index` that omits
  /// its i-th vertex. Throws std::out_of_range if that face is absent.
  std::size_t face(int p, std::size_t index, std::size_t i) const;

  /// First violation of face closure, ordering, range or uniqueness, if any.
  std::optional<ComplexViolation> validate() const;
  bool is_valid() const { return !validate().has_value(); }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertex_count_ == b.vertex_count_ && a.by_dimension_ == b.by_dimension_;
  }

 private:
  void rebuild_index();

  std::size_t vertex_count_ = 0;
  std::vector<std::vector<Simplex>> by_dimension_;
  std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
  /// faces_[p][index * (p + 1) + i] = face(p, index, i), or kMissing.
  std::vector<std::vector<std::size_t>> faces_;
};

long long euler_characteristic(const SimplicialComplex& k);

/// Staircase triangulation of K1 x K2 together with its vertex projections.
struct ProductMap {
  std::shared_ptr<const SimplicialComplex> complex;
  /// projections[v] = (vertex of K1, vertex of K2) for product vertex v.
  std::vector<std::pair<std::size_t, std::size_t>> projections;
  std::size_t first_vertex_count = 0;
  std::size_t second_vertex_count = 0;

  /// Product vertex index of the pair (u, v): u * |V(K2)| + v.
  std::size_t vertex(std::size_t u, std::size_t v) const { return u * second_vertex_count + v; }

  /// Image of a product simplex in factor 0 or 1, with repeated vertices collapsed.
  Simplex project(const Simplex& s, int factor) const;
};

ProductMap product_complex(const SimplicialComplex& first, const SimplicialComplex& second);

namespace complexes {

SimplicialComplex point();
/// Single edge [0,1].
SimplicialComplex interval();
/// Three vertices, three edges.
SimplicialComplex circle();
/// Boundary of the tetrahedron.
SimplicialComplex sphere();
/// Six-vertex real projective plane.
SimplicialComplex projective_plane();

}  // namespace complexes

}  // namespace affinelag
