#pragma once

#include <affinelag/affine.hpp>

#include <memory>
#include <vector>

namespace affinelag {

/// Free rank and torsion of a computed group, detached from its data.
struct GroupShape {
  int degree = 0;
  Ring ring = Ring::Z;
  std::size_t free_rank = 0;
  IntVector torsion;

  static GroupShape of(const CohomologyGroup& group);
  friend bool operator==(const GroupShape&, const GroupShape&) = default;
};

/// H^2(B; Z^n) in the dual of the given linear system.
CohomologyGroup chern_group(const std::shared_ptr<const LocalSystem>& linear);
CohomologyGroup chern_group(const IntegralAffineData& data);

/// Integral 2-cocycle in the dual linear system together with its class.
struct ChernClass {
  TwistedCochain cocycle;
  ClassCoordinates coordinates;
};

/// Throws std::invalid_argument unless `cocycle` is an integral 2-cocycle of `group`.
ChernClass chern_class(const CohomologyGroup& group, const TwistedCochain& cocycle);
ChernClass chern_class(const CohomologyGroup& group, const ClassCoordinates& coordinates);

struct ObstructionReport {
  /// Coordinates of [c cup t] in H^3(B; Q).
  ClassCoordinates dd_class;
  bool is_lagrangian = false;
  GroupShape h2;
  GroupShape h3;
};

/// D(c): the class of cup_with_pairing(c, translations) in H^3(B; Q).
ObstructionReport dazord_delzant(const IntegralAffineData& data, const TwistedCochain& chern_cocycle);
ObstructionReport dazord_delzant(const IntegralAffineData& data, const ChernClass& c);

/// D for one affine structure, with H^2 and H^3 computed once so that many
/// Chern classes can be evaluated cheaply.
class ObstructionMap {
 public:
  explicit ObstructionMap(IntegralAffineData data);
  const IntegralAffineData& data() const { return data_; }
  const CohomologyGroup& h2() const { return h2_; }
  const CohomologyGroup& h3() const { return h3_; }
  ObstructionReport operator()(const TwistedCochain& chern_cocycle) const;

 private:
  IntegralAffineData data_;
  CohomologyGroup h2_;
  CohomologyGroup h3_;
};

struct RealizableSubgroup {
  GroupShape h2;
  GroupShape h3;
  /// Column k holds D of the k-th free basis class of H^2.
  RationalMatrix pairing;
  /// Integer basis of the kernel of `pairing` in free H^2 coordinates.
  std::vector<IntVector> kernel_basis;
  /// Torsion classes vanish in rational H^3.
  bool includes_all_torsion = true;
  /// Rank of the pairing map, i.e. free rank minus kernel rank.
  std::size_t index_or_corank = 0;

  bool entire_group() const { return index_or_corank == 0; }
};

RealizableSubgroup realizable_subgroup(const IntegralAffineData& data);

/// Second differential on the row q = 1: for a p-cocycle x in `linear`
/// (the system of the fiber's first cohomology) and a Chern cocycle c in its
/// dual, returns the coordinates of (-1)^p [cup_with_pairing(x, c)] in
/// H^{p+2}(B), integrally when x is integral and rationally otherwise.
ClassCoordinates d2_differential(const std::shared_ptr<const LocalSystem>& linear, const TwistedCochain& c,
                                 const TwistedCochain& x);

}  // namespace affinelag
