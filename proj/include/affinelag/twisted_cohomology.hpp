#pragma once

#include <affinelag/local_system.hpp>
#include <affinelag/smith.hpp>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace affinelag {

enum class Ring { Z, Q };

std::string to_string(Ring ring);

/// p-cochain with values in the stalks of a local system. The value on a
/// simplex [v0 ... vp] lives in the stalk at its least vertex v0. Over Z every
/// entry is an integer.
class TwistedCochain {
 public:
  /// Zero cochain.
  TwistedCochain(std::shared_ptr<const LocalSystem> system, int degree, Ring ring);
  TwistedCochain(std::shared_ptr<const LocalSystem> system, int degree, Ring ring, RationalVector values);

  const LocalSystem& system() const { return *system_; }
  const std::shared_ptr<const LocalSystem>& system_ptr() const { return system_; }
  int degree() const { return degree_; }
  Ring ring() const { return ring_; }
  std::size_t rank() const { return system_->rank(); }
  std::size_t simplex_count() const { return values_.size() / system_->rank(); }

  std::span<const Rational> value(std::size_t simplex_index) const;
  std::span<const Rational> value(const Simplex& s) const;
  void set(std::size_t simplex_index, std::span<const Rational> v);
  void set(const Simplex& s, std::span<const Rational> v);

  const RationalVector& values() const { return values_; }
  bool is_zero() const;

  /// Z -> Q always succeeds; Q -> Z requires integral values.
  TwistedCochain with_ring(Ring ring) const;

  TwistedCochain& operator+=(const TwistedCochain& other);
  TwistedCochain& operator-=(const TwistedCochain& other);
  friend TwistedCochain operator+(TwistedCochain a, const TwistedCochain& b) { return a += b; }
  friend TwistedCochain operator-(TwistedCochain a, const TwistedCochain& b) { return a -= b; }
  friend TwistedCochain operator*(const Rational& s, TwistedCochain c);
  TwistedCochain operator-() const { return Rational(-1) * *this; }

  /// Same system (structurally), degree, ring and values.
  friend bool operator==(const TwistedCochain& a, const TwistedCochain& b);

 private:
  void check_compatible(const TwistedCochain& other) const;

  std::shared_ptr<const LocalSystem> system_;
  int degree_;
  Ring ring_;
  RationalVector values_;
};

/// Matrix of delta_p: rows index (p+1)-simplex x stalk coordinate, columns
/// index p-simplex x stalk coordinate.
SparseIntMatrix coboundary_matrix(const LocalSystem& system, int p);

/// delta c on [v0 ... v_{p+1}] = rho([v0,v1]) c([v1 ...]) + sum_{i >= 1} (-1)^i c(face_i).
TwistedCochain coboundary(const TwistedCochain& c);

/// Coordinates of a cohomology class: free part in the basis of the group
/// (integers over Z, rationals over Q) and torsion residues in [0, d_i).
struct ClassCoordinates {
  Ring ring = Ring::Z;
  RationalVector free;
  IntVector torsion;
  IntVector torsion_orders;

  bool is_zero() const;
  ClassCoordinates operator-() const;
  friend ClassCoordinates operator+(const ClassCoordinates& a, const ClassCoordinates& b);
  friend bool operator==(const ClassCoordinates& a, const ClassCoordinates& b) = default;
};

namespace detail {
struct CohomologyData;
}

/// H^p(B; L) over Z or Q with explicit representatives, computed from Smith
/// forms of the two adjacent coboundary matrices. The rational group is the
/// free part of the integral one, so both rings share basis cocycles.
class CohomologyGroup {
 public:
  int degree() const;
  Ring ring() const;
  const LocalSystem& system() const;
  const std::shared_ptr<const LocalSystem>& system_ptr() const;
  std::size_t free_rank() const;
  /// Invariant factors > 1 (empty over Q).
  const IntVector& torsion() const;
  bool is_trivial() const { return free_rank() == 0 && torsion().empty(); }

  /// Free generators first, then one generator per torsion factor.
  const std::vector<TwistedCochain>& basis_cocycles() const;

  /// Throws std::invalid_argument when `cocycle` is not a cocycle of this group's complex.
  ClassCoordinates coordinates(const TwistedCochain& cocycle) const;

  /// x with delta x = cocycle over this group's ring, if one exists.
  std::optional<TwistedCochain> coboundary_witness(const TwistedCochain& cocycle) const;

  /// Sum of basis cocycles weighted by the coordinates.
  TwistedCochain representative(const ClassCoordinates& coordinates) const;

 private:
  friend CohomologyGroup cohomology(std::shared_ptr<const LocalSystem>, int, Ring);
  std::shared_ptr<const detail::CohomologyData> data_;
};

CohomologyGroup cohomology(std::shared_ptr<const LocalSystem> system, int p, Ring ring);

inline ClassCoordinates class_coordinates(const CohomologyGroup& group, const TwistedCochain& cocycle) {
  return group.coordinates(cocycle);
}

/// x with delta x = c over c's ring, or nullopt. Throws std::invalid_argument
/// if c is not a cocycle.
std::optional<TwistedCochain> is_coboundary(const TwistedCochain& c);

/// Alexander-Whitney cup product combined with the stalk pairing
/// L* (x) L -> Z. `a` must lie in the dual of b's system. On
/// [v0 ... v_{p+q}] the value is a([v0..vp]) . rho([v0,vp]) b([vp..v_{p+q}]).
/// The result lives in the trivial rank-1 system, over Z when both inputs
/// are integral cochains and over Q otherwise.
TwistedCochain cup_with_pairing(const TwistedCochain& a, const TwistedCochain& b);

/// The trivial rank-1 system on `base`.
std::shared_ptr<const LocalSystem> trivial_line(const std::shared_ptr<const SimplicialComplex>& base);

}  // namespace affinelag
