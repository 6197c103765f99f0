#include <affinelag/twisted_cohomology.hpp>

#include <catch_amalgamated.hpp>

#include "oracles/koszul.hpp"
#include "support/models.hpp"

using namespace affinelag;
using support::share;

namespace {

std::shared_ptr<const LocalSystem> trivial_on(SimplicialComplex k, std::size_t rank = 1) {
  return share(LocalSystem::trivial(std::make_shared<const SimplicialComplex>(std::move(k)), rank));
}

std::vector<std::size_t> betti(const std::shared_ptr<const LocalSystem>& s, Ring ring = Ring::Q) {
  std::vector<std::size_t> out;
  for (int p = 0; p <= s->base().dimension(); ++p) out.push_back(cohomology(s, p, ring).free_rank());
  return out;
}

TwistedCochain basis_vector(const CohomologyGroup& h, std::size_t k) { return h.basis_cocycles()[k]; }

}  // namespace

TEST_CASE("coboundary of a constant is zero on a trivial system") {
  auto s = trivial_on(complexes::sphere(), 2);
  RationalVector v;
  for (int i = 0; i < 4; ++i) v.insert(v.end(), {Rational(3), Rational(-1)});
  CHECK(coboundary(TwistedCochain(s, 0, Ring::Z, v)).is_zero());
}

TEST_CASE("coboundary matrix agrees with coboundary") {
  std::mt19937_64 rng(5);
  auto s = support::random_gauge(rng, *support::torus_system({IntMatrix{{0, -1}, {1, 0}}, IntMatrix{{-1, 0}, {0, -1}}}));
  for (int p = 0; p < 2; ++p) {
    auto c = support::random_cochain(rng, s, p);
    auto m = coboundary_matrix(*s, p);
    auto product = m.multiply(std::span<const Rational>(c.values()));
    CHECK(product == coboundary(c).values());
  }
}

TEST_CASE("delta squared vanishes on random systems") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 3;
    IntMatrix a = support::random_unimodular(rng, n);
    auto s = support::random_gauge(rng, *support::torus_system({a, a * a}));
    for (int p = 0; p <= 1; ++p) {
      auto c = support::random_cochain(rng, s, p, trial % 2 ? Ring::Q : Ring::Z);
      CHECK(coboundary(coboundary(c)).is_zero());
    }
  }
}

TEST_CASE("classical Betti numbers") {
  CHECK(betti(trivial_on(complexes::sphere())) == std::vector<std::size_t>{1, 0, 1});
  CHECK(betti(trivial_on(*support::torus(2))) == std::vector<std::size_t>{1, 2, 1});
  CHECK(betti(trivial_on(*support::torus(3))) == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(betti(trivial_on(complexes::circle()), Ring::Z) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("projective plane has Z/2 in degree two") {
  auto s = trivial_on(complexes::projective_plane());
  auto h0 = cohomology(s, 0, Ring::Z);
  auto h1 = cohomology(s, 1, Ring::Z);
  auto h2 = cohomology(s, 2, Ring::Z);
  CHECK(h0.free_rank() == 1);
  CHECK(h0.torsion().empty());
  CHECK(h1.is_trivial());
  CHECK(h2.free_rank() == 0);
  CHECK(h2.torsion() == IntVector{2});
  CHECK(cohomology(s, 2, Ring::Q).is_trivial());

  auto gen = h2.basis_cocycles().at(0);
  auto coords = h2.coordinates(gen);
  CHECK(coords.torsion == IntVector{1});
  CHECK(!h2.coboundary_witness(gen));
  CHECK(h2.coordinates(Rational(2) * gen).is_zero());
  auto w = h2.coboundary_witness(Rational(2) * gen);
  REQUIRE(w);
  CHECK(coboundary(*w) == Rational(2) * gen);
}

TEST_CASE("circle with orientation-reversing loop") {
  auto s = share(LocalSystem::from_edges(std::make_shared<const SimplicialComplex>(complexes::circle()), 1,
                                         {{{0, 2}, IntMatrix{{-1}}}}));
  auto h1 = cohomology(s, 1, Ring::Z);
  CHECK(h1.free_rank() == 0);
  CHECK(h1.torsion() == IntVector{2});
  CHECK(cohomology(s, 0, Ring::Z).is_trivial());
  auto k = oracle::koszul_cohomology({IntMatrix{{-1}}}, 1);
  CHECK(k.free_rank == 0);
  CHECK(k.torsion == std::vector<Integer>{2});
}

TEST_CASE("trivial rank-3 system on the three-torus") {
  auto s = trivial_on(*support::torus(3), 3);
  auto h2 = cohomology(s, 2, Ring::Z);
  CHECK(h2.free_rank() == 9);
  CHECK(h2.torsion().empty());
}

TEST_CASE("twisted tori agree with the Koszul complex") {
  std::vector<std::vector<IntMatrix>> cases{
      {IntMatrix{{-1}}, IntMatrix{{-1}}},
      {IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 2}, {0, 1}}},
      {IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{1, 0}, {0, 1}}},
      {IntMatrix{{0, -1}, {1, 0}}, IntMatrix{{-1, 0}, {0, -1}}},
      {IntMatrix{{1, 0}, {-2, 1}}, IntMatrix{{1, 0}, {3, 1}}, IntMatrix{{-1, 0}, {0, -1}}},
      {IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, -1}}, IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}},
  };
  for (const auto& loops : cases) {
    auto s = support::torus_system(loops);
    REQUIRE(!validate_cocycle(*s));
    for (std::size_t p = 0; p <= loops.size(); ++p) {
      auto h = cohomology(s, static_cast<int>(p), Ring::Z);
      auto k = oracle::koszul_cohomology(loops, p);
      CHECK(h.free_rank() == k.free_rank);
      CHECK(h.torsion() == k.torsion);
      CHECK(cohomology(s, static_cast<int>(p), Ring::Q).free_rank() == k.free_rank);
    }
  }
}

TEST_CASE("random twisted tori agree with the Koszul complex") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + trial % 3;
    IntMatrix a = support::random_unimodular(rng, n, 3);
    IntMatrix b = trial % 2 ? a * a : unimodular_inverse(a);
    std::vector<IntMatrix> loops{a, b};
    auto s = support::random_gauge(rng, *support::torus_system(loops));
    for (std::size_t p = 0; p <= 2; ++p) {
      auto h = cohomology(s, static_cast<int>(p), Ring::Z);
      auto k = oracle::koszul_cohomology(loops, p);
      CHECK(h.free_rank() == k.free_rank);
      CHECK(h.torsion() == k.torsion);
    }
  }
}

TEST_CASE("coordinates of basis cocycles are unit vectors") {
  std::mt19937_64 rng(29);
  auto s = support::random_gauge(rng, *support::torus_system({IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{-1, 0}, {0, -1}}}));
  for (int p = 0; p <= 2; ++p)
    for (Ring ring : {Ring::Z, Ring::Q}) {
      auto h = cohomology(s, p, ring);
      const auto& basis = h.basis_cocycles();
      REQUIRE(basis.size() == h.free_rank() + h.torsion().size());
      for (std::size_t k = 0; k < basis.size(); ++k) {
        CHECK(coboundary(basis[k]).is_zero());
        auto c = h.coordinates(basis[k]);
        for (std::size_t i = 0; i < c.free.size(); ++i) CHECK(c.free[i] == (i == k ? 1 : 0));
        for (std::size_t i = 0; i < c.torsion.size(); ++i) CHECK(c.torsion[i] == (h.free_rank() + i == k ? 1 : 0));
        CHECK(h.representative(c) == basis[k]);
      }
      if (basis.size() >= 2) {
        auto c = h.coordinates(basis[0] + basis[1]);
        CHECK(c == h.coordinates(basis[0]) + h.coordinates(basis[1]));
      }
    }
}

TEST_CASE("coboundaries have zero coordinates and witnesses") {
  std::mt19937_64 rng(31);
  auto s = support::random_gauge(rng, *support::torus_system({IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{-1, 0}, {0, -1}}}));
  for (int p = 1; p <= 2; ++p)
    for (Ring ring : {Ring::Z, Ring::Q})
      for (int trial = 0; trial < 10; ++trial) {
        auto x = support::random_cochain(rng, s, p - 1, ring);
        auto dx = coboundary(x);
        auto h = cohomology(s, p, ring);
        CHECK(h.coordinates(dx).is_zero());
        auto w = h.coboundary_witness(dx);
        REQUIRE(w);
        CHECK(coboundary(*w) == dx);
        auto w2 = is_coboundary(dx);
        REQUIRE(w2);
        CHECK(coboundary(*w2) == dx);

        // Shifting a cocycle by a coboundary keeps its class.
        for (const auto& b : h.basis_cocycles()) CHECK(h.coordinates(b + dx) == h.coordinates(b));
      }
}

TEST_CASE("is_coboundary on non-trivial classes") {
  auto circle = std::make_shared<const SimplicialComplex>(complexes::circle());
  auto s = share(LocalSystem::trivial(circle, 1));
  TwistedCochain winding(s, 1, Ring::Q);
  winding.set(Simplex{0, 2}, RationalVector{Rational(1)});
  CHECK(!is_coboundary(winding));
  auto zero = is_coboundary(TwistedCochain(s, 1, Ring::Z));
  REQUIRE(zero);
  CHECK(zero->is_zero());

  TwistedCochain not_closed(share(LocalSystem::trivial(std::make_shared<const SimplicialComplex>(complexes::sphere()), 1)), 1, Ring::Z);
  not_closed.set(Simplex{0, 1}, RationalVector{Rational(1)});
  CHECK_THROWS_AS(is_coboundary(not_closed), std::invalid_argument);
}

TEST_CASE("degrees outside the complex give zero groups") {
  auto s = trivial_on(complexes::circle());
  CHECK(cohomology(s, -1, Ring::Z).is_trivial());
  CHECK(cohomology(s, 2, Ring::Z).is_trivial());
  CHECK(cohomology(s, 5, Ring::Q).is_trivial());
}

TEST_CASE("cup product on the untwisted two-torus") {
  auto s = trivial_on(*support::torus(2));
  auto h1 = cohomology(s, 1, Ring::Z);
  auto h2 = cohomology(s, 2, Ring::Z);
  REQUIRE(h1.free_rank() == 2);
  REQUIRE(h2.free_rank() == 1);
  auto a = basis_vector(h1, 0), b = basis_vector(h1, 1);
  auto ab = h2.coordinates(cup_with_pairing(a, b)).free.at(0);
  auto ba = h2.coordinates(cup_with_pairing(b, a)).free.at(0);
  CHECK(abs(ab) == 1);
  CHECK(ba == -ab);
  CHECK(h2.coordinates(cup_with_pairing(a, a)).is_zero());
  CHECK(h2.coordinates(cup_with_pairing(b, b)).is_zero());
  auto q2 = cohomology(s, 2, Ring::Q);
  CHECK(q2.coordinates(cup_with_pairing(a.with_ring(Ring::Q), b)).free.at(0) == ab);
}

TEST_CASE("cup product on the three-torus is the exterior algebra") {
  // Classical oracle: the dual basis of the three loops, as explicit cocycles
  // pulled back from each circle factor, cups to +-(generator) exactly when the
  // three indices are distinct, with the sign of the permutation.
  auto s = trivial_on(*support::torus(3));
  std::vector<TwistedCochain> loops;
  for (std::size_t i = 0; i < 3; ++i) {
    TwistedCochain c(s, 1, Ring::Z);
    for (std::size_t e = 0; e < s->base().count(1); ++e) {
      const auto& edge = s->base().simplices(1)[e];
      if (support::digit(edge[0], i, 3) == 0 && support::digit(edge[1], i, 3) == 2)
        c.set(e, RationalVector{Rational(1)});
    }
    REQUIRE(coboundary(c).is_zero());
    loops.push_back(c);
  }
  auto h3 = cohomology(s, 3, Ring::Z);
  REQUIRE(h3.free_rank() == 1);
  auto triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    return h3.coordinates(cup_with_pairing(cup_with_pairing(loops[i], loops[j]), loops[k])).free.at(0);
  };
  Rational unit = triple(0, 1, 2);
  CHECK(abs(unit) == 1);
  CHECK(triple(1, 0, 2) == -unit);
  CHECK(triple(1, 2, 0) == unit);
  CHECK(triple(2, 1, 0) == -unit);
  CHECK(triple(0, 0, 2) == 0);
  CHECK(triple(2, 1, 2) == 0);
}

TEST_CASE("Leibniz rule for the pairing cup product") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    IntMatrix a = support::random_unimodular(rng, n);
    auto l = support::random_gauge(rng, *support::torus_system({a, a * a, unimodular_inverse(a)}));
    auto dual = share(dual_system(*l));
    const int p = trial % 3, q = (trial / 3) % 2;
    auto x = support::random_cochain(rng, dual, p, Ring::Q);
    auto y = support::random_cochain(rng, l, q, Ring::Z);
    auto lhs = coboundary(cup_with_pairing(x, y));
    auto rhs = cup_with_pairing(coboundary(x), y) + Rational(p % 2 ? -1 : 1) * cup_with_pairing(x, coboundary(y));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("cup product descends to cohomology") {
  std::mt19937_64 rng(41);
  auto l = support::random_gauge(rng, *support::torus_system({IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{1, 2}, {0, 1}}}));
  auto dual = share(dual_system(*l));
  auto h1 = cohomology(l, 1, Ring::Z);
  auto h2 = cohomology(dual, 2, Ring::Z);
  auto h3 = cohomology(trivial_line(l->base_ptr()), 3, Ring::Q);
  REQUIRE(h1.free_rank() > 0);
  REQUIRE(h2.free_rank() > 0);
  for (const auto& c : h2.basis_cocycles())
    for (const auto& r : h1.basis_cocycles()) {
      auto cup = cup_with_pairing(c, r);
      CHECK(coboundary(cup).is_zero());
      auto shifted_c = c + coboundary(support::random_cochain(rng, dual, 1));
      auto shifted_r = r + coboundary(support::random_cochain(rng, l, 0));
      CHECK(h3.coordinates(cup_with_pairing(shifted_c, shifted_r)) == h3.coordinates(cup));
    }
}

TEST_CASE("cup product rejects mismatched systems") {
  auto s = support::torus_system({IntMatrix{{1, 1}, {0, 1}}});
  TwistedCochain a(s, 0, Ring::Z), b(s, 0, Ring::Z);
  CHECK_THROWS_AS(cup_with_pairing(a, b), std::invalid_argument);
  auto d = share(dual_system(*s));
  CHECK(cup_with_pairing(TwistedCochain(d, 0, Ring::Z), b).is_zero());
}

TEST_CASE("cochain arithmetic") {
  auto s = trivial_on(complexes::circle());
  TwistedCochain a(s, 1, Ring::Z, {1, 2, 3});
  TwistedCochain b(s, 1, Ring::Z, {1, 1, 1});
  CHECK((a - b).values() == RationalVector{0, 1, 2});
  CHECK((-a).values() == RationalVector{-1, -2, -3});
  CHECK_THROWS_AS(Rational(1, 2) * a, std::invalid_argument);
  CHECK_THROWS_AS(TwistedCochain(s, 1, Ring::Z, {Rational(1, 2), 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(a + TwistedCochain(s, 0, Ring::Z), std::invalid_argument);
  CHECK(a.with_ring(Ring::Q).ring() == Ring::Q);
  CHECK(a.value(Simplex{0, 2})[0] == 2);
}
