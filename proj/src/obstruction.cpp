#include <affinelag/obstruction.hpp>

#include <stdexcept>

namespace affinelag {

GroupShape GroupShape::of(const CohomologyGroup& group) {
  return {group.degree(), group.ring(), group.free_rank(), group.torsion()};
}

CohomologyGroup chern_group(const std::shared_ptr<const LocalSystem>& linear) {
  return cohomology(std::make_shared<const LocalSystem>(dual_system(*linear)), 2, Ring::Z);
}

CohomologyGroup chern_group(const IntegralAffineData& data) { return chern_group(data.linear_ptr()); }

ChernClass chern_class(const CohomologyGroup& group, const TwistedCochain& cocycle) {
  if (group.degree() != 2 || group.ring() != Ring::Z) throw std::invalid_argument("chern_class: expected an integral H^2");
  if (cocycle.ring() != Ring::Z) throw std::invalid_argument("chern_class: Chern cocycles are integral");
  return {cocycle, group.coordinates(cocycle)};
}

ChernClass chern_class(const CohomologyGroup& group, const ClassCoordinates& coordinates) {
  if (!is_integral(coordinates.free)) throw std::invalid_argument("chern_class: free coordinates must be integers");
  return chern_class(group, group.representative(coordinates));
}

namespace {

void check_chern(const IntegralAffineData& data, const TwistedCochain& c) {
  if (c.degree() != 2) throw std::invalid_argument("Chern cocycle must have degree 2");
  if (!is_dual_pair(c.system(), data.linear()))
    throw std::invalid_argument("Chern cocycle must live in the dual of the linear system");
  if (!coboundary(c).is_zero()) throw std::invalid_argument("Chern cochain is not a cocycle");
}

ClassCoordinates dd_coordinates(const CohomologyGroup& h3, const IntegralAffineData& data, const TwistedCochain& c) {
  return h3.coordinates(cup_with_pairing(c, data.translations()));
}

CohomologyGroup rational_h3(const IntegralAffineData& data) {
  return cohomology(trivial_line(data.linear().base_ptr()), 3, Ring::Q);
}

}  // namespace

ObstructionMap::ObstructionMap(IntegralAffineData data)
    : data_(std::move(data)), h2_(chern_group(data_)), h3_(rational_h3(data_)) {}

ObstructionReport ObstructionMap::operator()(const TwistedCochain& chern_cocycle) const {
  // Cocycles built on our own H^2 system are known to be in the dual.
  if (chern_cocycle.system_ptr() == h2_.system_ptr()) {
    if (chern_cocycle.degree() != 2) throw std::invalid_argument("Chern cocycle must have degree 2");
    if (!coboundary(chern_cocycle).is_zero()) throw std::invalid_argument("Chern cochain is not a cocycle");
  } else {
    check_chern(data_, chern_cocycle);
  }
  ObstructionReport out;
  out.dd_class = dd_coordinates(h3_, data_, chern_cocycle);
  out.is_lagrangian = out.dd_class.is_zero();
  out.h2 = GroupShape::of(h2_);
  out.h3 = GroupShape::of(h3_);
  return out;
}

ObstructionReport dazord_delzant(const IntegralAffineData& data, const TwistedCochain& chern_cocycle) {
  return ObstructionMap(data)(chern_cocycle);
}

ObstructionReport dazord_delzant(const IntegralAffineData& data, const ChernClass& c) {
  return dazord_delzant(data, c.cocycle);
}

RealizableSubgroup realizable_subgroup(const IntegralAffineData& data) {
  ObstructionMap map(data);
  const auto& h2 = map.h2();
  RealizableSubgroup out;
  out.h2 = GroupShape::of(h2);
  out.h3 = GroupShape::of(map.h3());
  const std::size_t free = h2.free_rank();
  out.pairing = RationalMatrix(map.h3().free_rank(), free);
  for (std::size_t k = 0; k < free; ++k) {
    auto d = map(h2.basis_cocycles()[k]).dd_class;
    for (std::size_t r = 0; r < d.free.size(); ++r) out.pairing(r, k) = d.free[r];
  }

  // Scale each row to integers; the integer kernel is unchanged.
  IntMatrix integral(out.pairing.rows(), free);
  for (std::size_t r = 0; r < out.pairing.rows(); ++r) {
    auto row = out.pairing.row(r);
    Integer den = common_denominator(row);
    for (std::size_t k = 0; k < free; ++k) integral(r, k) = Rational(row[k] * den).get_num();
  }
  auto solution = solve_integer(integral, IntVector(integral.rows()));
  out.kernel_basis = solution->kernel_basis;
  out.index_or_corank = free - out.kernel_basis.size();
  return out;
}

ClassCoordinates d2_differential(const std::shared_ptr<const LocalSystem>& linear, const TwistedCochain& c,
                                 const TwistedCochain& x) {
  if (!same_system(x.system(), *linear)) throw std::invalid_argument("d2_differential: x must live in the linear system");
  if (c.degree() != 2 || !is_dual_pair(c.system(), *linear))
    throw std::invalid_argument("d2_differential: c must be a 2-cocycle in the dual system");
  if (!coboundary(c).is_zero()) throw std::invalid_argument("d2_differential: c is not a cocycle");
  if (!coboundary(x).is_zero()) throw std::invalid_argument("d2_differential: x is not a cocycle");
  const int p = x.degree();
  TwistedCochain image = cup_with_pairing(x, c);
  if (p % 2) image = -image;
  auto target = cohomology(image.system_ptr(), p + 2, image.ring());
  return target.coordinates(image);
}

}  // namespace affinelag
