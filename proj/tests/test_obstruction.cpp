#include <affinelag/obstruction.hpp>

#include <catch_amalgamated.hpp>

#include "oracles/koszul.hpp"
#include "support/models.hpp"

using namespace affinelag;

namespace {

const IntMatrix hyperbolic{{2, 1}, {1, 1}};

// Loop matrices of the dual system of a product of holonomy circles, each
// factor's inverse transpose embedded in its own diagonal block.
std::vector<IntMatrix> dual_loops(const std::vector<IntMatrix>& factors) {
  std::size_t n = 0;
  for (const auto& f : factors) n += f.rows();
  std::vector<IntMatrix> out;
  std::size_t offset = 0;
  for (const auto& f : factors) {
    IntMatrix m = IntMatrix::identity(n);
    IntMatrix d = inverse_transpose(f);
    for (std::size_t r = 0; r < f.rows(); ++r)
      for (std::size_t c = 0; c < f.cols(); ++c) m(offset + r, offset + c) = d(r, c);
    out.push_back(m);
    offset += f.rows();
  }
  return out;
}

// Loop-i cocycle on the staircase T^3 with a trivial rank-1 system.
TwistedCochain loop_cocycle(std::shared_ptr<const LocalSystem> line, std::size_t i) {
  TwistedCochain c(line, 1, Ring::Z);
  const auto& edges = line->base().simplices(1);
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (support::digit(edges[e][0], i, 3) == 0 && support::digit(edges[e][1], i, 3) == 2)
      c.set(e, RationalVector{Rational(1)});
  return c;
}

// e_j (x) scalar cochain, in a trivial rank-n system.
TwistedCochain embed(std::shared_ptr<const LocalSystem> system, const TwistedCochain& scalar, std::size_t j) {
  const std::size_t n = system->rank();
  RationalVector values(scalar.values().size() * n);
  for (std::size_t s = 0; s < scalar.values().size(); ++s) values[s * n + j] = scalar.values()[s];
  return TwistedCochain(std::move(system), scalar.degree(), scalar.ring(), std::move(values));
}

}  // namespace

TEST_CASE("chern group of the standard three-torus") {
  auto g = chern_group(models::standard_torus(3));
  CHECK(g.free_rank() == 9);
  CHECK(g.torsion().empty());
}

TEST_CASE("chern groups of Y follow the unipotency criterion") {
  std::vector<std::vector<IntMatrix>> cases{
      {hyperbolic, hyperbolic, hyperbolic},
      {models::unipotent(1), hyperbolic, hyperbolic},
      {hyperbolic, models::unipotent(1), models::unipotent(2)},
      {models::unipotent(1), models::unipotent(2), models::unipotent(3)},
      {IntMatrix{{-1, 0}, {0, -1}}, hyperbolic, hyperbolic},
  };
  for (const auto& factors : cases) {
    auto y = models::y_model(factors[0], factors[1], factors[2]);
    auto dual = std::make_shared<const LocalSystem>(dual_system(y.linear()));
    auto loops = dual_loops(factors);
    for (int p = 0; p <= 3; ++p) {
      auto h = cohomology(dual, p, Ring::Z);
      auto k = oracle::koszul_cohomology(loops, static_cast<std::size_t>(p));
      CHECK(h.free_rank() == k.free_rank);
      CHECK(h.torsion() == k.torsion);
    }
  }
  CHECK(chern_group(models::y_model(hyperbolic, hyperbolic, hyperbolic)).is_trivial());
  CHECK(!chern_group(models::y_model(models::unipotent(1), hyperbolic, hyperbolic)).is_trivial());
}

TEST_CASE("radiant data obstruct nothing") {
  for (const auto& data : {models::y_model(models::unipotent(1), hyperbolic, hyperbolic), models::z_model({1, 2, 3}),
                           models::standard_torus(3, std::vector<RationalVector>(3, RationalVector(3)))}) {
    REQUIRE(is_radiant(data).radiant);
    auto h2 = chern_group(data);
    REQUIRE(!h2.is_trivial());
    for (const auto& c : h2.basis_cocycles()) {
      auto report = dazord_delzant(data, c);
      CHECK(report.is_lagrangian);
      CHECK(report.dd_class.is_zero());
    }
    auto sub = realizable_subgroup(data);
    CHECK(sub.entire_group());
    CHECK(sub.kernel_basis.size() == h2.free_rank());
  }
}

TEST_CASE("H^3 of Y is one-dimensional") {
  auto y = models::y_model(models::unipotent(1), hyperbolic, hyperbolic);
  auto c = chern_group(y).basis_cocycles().front();
  auto report = dazord_delzant(y, c);
  CHECK(report.h3.free_rank == 1);
  CHECK(report.h3.ring == Ring::Q);
  CHECK(report.h2.free_rank == 3);
}

TEST_CASE("standard three-torus obstruction matches the exterior algebra") {
  // Oracle: with t = sum_i e_i (x) a_i, the class e_j (x) (a_a cup a_b) pairs
  // to a_a cup a_b cup a_j, a generator exactly when {a, b, j} = {0, 1, 2}.
  auto data = models::standard_torus(3);
  auto line = trivial_line(data.linear().base_ptr());
  auto dual = std::make_shared<const LocalSystem>(dual_system(data.linear()));
  std::vector<TwistedCochain> loops;
  for (std::size_t i = 0; i < 3; ++i) loops.push_back(loop_cocycle(line, i));
  auto h3 = cohomology(line, 3, Ring::Q);
  Rational unit = h3.coordinates(cup_with_pairing(cup_with_pairing(loops[0], loops[1]), loops[2])).free.at(0);
  REQUIRE(abs(unit) == 1);

  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) {
        auto c = embed(dual, cup_with_pairing(loops[a], loops[b]), j);
        auto report = dazord_delzant(data, c);
        const bool distinct = j != a && j != b;
        CHECK(report.is_lagrangian == !distinct);
        if (distinct) {
          Rational expected = h3.coordinates(cup_with_pairing(cup_with_pairing(loops[a], loops[b]), loops[j])).free.at(0);
          CHECK(report.dd_class.free.at(0) == expected);
        }
      }
}

TEST_CASE("realizable subgroup of the standard three-torus") {
  auto data = models::standard_torus(3);
  auto sub = realizable_subgroup(data);
  CHECK(sub.h2.free_rank == 9);
  CHECK(sub.kernel_basis.size() == 8);
  CHECK(sub.index_or_corank == 1);
  CHECK(!sub.entire_group());
  REQUIRE(sub.pairing.rows() == 1);
  REQUIRE(sub.pairing.cols() == 9);
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < 9; ++k)
    if (sub.pairing(0, k) != 0) {
      ++nonzero;
      CHECK(abs(sub.pairing(0, k)) == 1);
    }
  CHECK(nonzero == 3);

  auto h2 = chern_group(data);
  for (const auto& v : sub.kernel_basis) {
    ClassCoordinates coords{Ring::Z, RationalVector(v.begin(), v.end()), {}, {}};
    CHECK(dazord_delzant(data, chern_class(h2, coords)).is_lagrangian);
  }
  bool some_obstructed = false;
  for (const auto& c : h2.basis_cocycles()) some_obstructed |= !dazord_delzant(data, c).is_lagrangian;
  CHECK(some_obstructed);
}

TEST_CASE("zero translations make every class realizable") {
  auto data = IntegralAffineData(models::standard_torus(3).linear_ptr());
  auto sub = realizable_subgroup(data);
  CHECK(sub.entire_group());
  CHECK(sub.kernel_basis.size() == 9);
}

TEST_CASE("torsion Chern classes are Lagrangian") {
  auto data = models::product({models::circle(1), models::holonomy_circle(IntMatrix{{-1}}), models::circle(Rational(2, 3))});
  REQUIRE(!is_radiant(data).radiant);
  auto h2 = chern_group(data);
  REQUIRE(!h2.torsion().empty());
  for (std::size_t k = h2.free_rank(); k < h2.basis_cocycles().size(); ++k)
    CHECK(dazord_delzant(data, h2.basis_cocycles()[k]).is_lagrangian);
  auto sub = realizable_subgroup(data);
  CHECK(sub.includes_all_torsion);
  CHECK(sub.index_or_corank + sub.kernel_basis.size() == h2.free_rank());
}

TEST_CASE("obstruction is bilinear and well defined") {
  auto data = models::product({models::circle(1), models::holonomy_circle(IntMatrix{{-1}}), models::circle(Rational(2, 3))});
  auto h2 = chern_group(data);
  auto dual = h2.system_ptr();
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> coef(-3, 3);
  auto random_class = [&] {
    TwistedCochain c(dual, 2, Ring::Z);
    for (const auto& b : h2.basis_cocycles()) c += Rational(coef(rng)) * b;
    return c + coboundary(support::random_cochain(rng, dual, 1));
  };
  for (int trial = 0; trial < 10; ++trial) {
    auto c1 = random_class(), c2 = random_class();
    auto d1 = dazord_delzant(data, c1).dd_class, d2 = dazord_delzant(data, c2).dd_class;
    CHECK(dazord_delzant(data, c1 + c2).dd_class == d1 + d2);

    auto shifted_c = c1 + coboundary(support::random_cochain(rng, dual, 1));
    CHECK(dazord_delzant(data, shifted_c).dd_class == d1);
    IntegralAffineData shifted_t(data.linear_ptr(),
                                 data.translations() + coboundary(support::random_cochain(rng, data.linear_ptr(), 0, Ring::Q)));
    CHECK(dazord_delzant(shifted_t, c1).dd_class == d1);
  }
}

TEST_CASE("obstruction rejects mismatched input") {
  auto data = models::standard_torus(2);
  CHECK_THROWS_AS(dazord_delzant(data, TwistedCochain(data.linear_ptr(), 1, Ring::Z)), std::invalid_argument);
  auto other = product(models::holonomy_circle(models::unipotent(1)), models::circle(1));
  auto c = chern_group(other).basis_cocycles();
  if (!c.empty()) CHECK_THROWS_AS(dazord_delzant(data, c.front()), std::invalid_argument);
}

TEST_CASE("d2 of the zero class vanishes") {
  auto data = models::standard_torus(3);
  auto dual = chern_group(data).system_ptr();
  TwistedCochain zero(dual, 2, Ring::Z);
  std::mt19937_64 rng(47);
  for (int p = 0; p <= 1; ++p) {
    auto group = cohomology(data.linear_ptr(), p, Ring::Z);
    for (const auto& x : group.basis_cocycles()) CHECK(d2_differential(data.linear_ptr(), zero, x).is_zero());
  }
}

TEST_CASE("d2 on the Hopf model is an isomorphism") {
  auto sphere = std::make_shared<const SimplicialComplex>(complexes::sphere());
  auto line = std::make_shared<const LocalSystem>(LocalSystem::trivial(sphere, 1));
  auto h0 = cohomology(line, 0, Ring::Z);
  auto h2 = cohomology(std::make_shared<const LocalSystem>(dual_system(*line)), 2, Ring::Z);
  REQUIRE(h0.free_rank() == 1);
  REQUIRE(h2.free_rank() == 1);
  auto image = d2_differential(line, h2.basis_cocycles()[0], h0.basis_cocycles()[0]);
  REQUIRE(image.free.size() == 1);
  CHECK(abs(image.free[0]) == 1);
  CHECK(image.ring == Ring::Z);
}

TEST_CASE("d2 of the radiance cocycle is minus the obstruction") {
  for (const auto& data : {models::standard_torus(3),
                           models::product({models::circle(1), models::holonomy_circle(IntMatrix{{-1}}), models::circle(2)}),
                           models::standard_torus(3, {{1, 0, 2}, {0, -1, 0}, {3, 1, 1}})}) {
    auto h2 = chern_group(data);
    auto x = data.translations().with_ring(Ring::Z);
    for (const auto& c : h2.basis_cocycles()) {
      auto d2 = d2_differential(data.linear_ptr(), c, x);
      auto dd = dazord_delzant(data, c).dd_class;
      CHECK(d2.ring == Ring::Z);
      CHECK(d2.torsion.empty());
      CHECK(d2.free == (-dd).free);
    }
  }
}

TEST_CASE("cup with the Chern class commutes in degrees one and two") {
  auto data = models::standard_torus(3, {{1, 0, 2}, {0, -1, 0}, {3, 1, 1}});
  auto h2 = chern_group(data);
  auto h3 = cohomology(trivial_line(data.linear().base_ptr()), 3, Ring::Q);
  for (const auto& c : h2.basis_cocycles())
    CHECK(h3.coordinates(cup_with_pairing(c, data.translations())) ==
          h3.coordinates(cup_with_pairing(data.translations(), c)));
}

TEST_CASE("a reused obstruction map agrees with single evaluations") {
  auto data = models::standard_torus(3, {{1, 0, 2}, {0, -1, 0}, {3, 1, 1}});
  ObstructionMap map(data);
  CHECK(GroupShape::of(map.h2()) == GroupShape::of(chern_group(data)));
  for (const auto& c : map.h2().basis_cocycles()) {
    auto once = dazord_delzant(data, c);
    auto reused = map(c);
    CHECK(reused.dd_class == once.dd_class);
    CHECK(reused.is_lagrangian == once.is_lagrangian);
    CHECK(reused.h2 == once.h2);
    CHECK(reused.h3 == once.h3);
  }
}
