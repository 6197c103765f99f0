#include <affinelag/simplicial.hpp>

#include <catch_amalgamated.hpp>

#include <map>

using namespace affinelag;

TEST_CASE("validate accepts closed complexes") {
  CHECK(complexes::sphere().is_valid());
  CHECK(complexes::sphere().count(0) == 4);
  CHECK(complexes::sphere().count(1) == 6);
  CHECK(complexes::sphere().count(2) == 4);
  CHECK(SimplicialComplex().is_valid());
  CHECK(SimplicialComplex().dimension() == -1);
  CHECK(complexes::projective_plane().is_valid());
}

TEST_CASE("validate names a missing edge") {
  auto k = SimplicialComplex::from_simplices(3, {{0, 1}, {1, 2}, {0, 1, 2}});
  auto v = k.validate();
  REQUIRE(v);
  CHECK(v->kind == ComplexViolation::Kind::MissingFace);
  CHECK(v->face == Simplex{0, 2});
  CHECK(v->message().find("[0,2]") != std::string::npos);
}

TEST_CASE("validate reports ordering, range and duplicates") {
  CHECK(SimplicialComplex::from_simplices(3, {{1, 0}}).validate()->kind == ComplexViolation::Kind::NotIncreasing);
  CHECK(SimplicialComplex::from_simplices(2, {{0, 5}}).validate()->kind == ComplexViolation::Kind::VertexOutOfRange);
  CHECK(SimplicialComplex::from_simplices(2, {{0, 1}, {0, 1}}).validate()->kind == ComplexViolation::Kind::Duplicate);
  CHECK_THROWS_AS(SimplicialComplex::from_facets(2, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("euler characteristics of the built-in models") {
  CHECK(euler_characteristic(complexes::sphere()) == 2);
  CHECK(euler_characteristic(complexes::circle()) == 0);
  CHECK(euler_characteristic(complexes::projective_plane()) == 1);
  CHECK(euler_characteristic(complexes::point()) == 1);
}

TEST_CASE("staircase torus counts") {
  auto t = product_complex(complexes::circle(), complexes::circle());
  const auto& k = *t.complex;
  CHECK(k.is_valid());
  CHECK(k.count(0) == 9);
  CHECK(k.count(1) == 27);
  CHECK(k.count(2) == 18);
  CHECK(euler_characteristic(k) == 0);

  auto t3 = product_complex(k, complexes::circle());
  CHECK(t3.complex->count(0) == 27);
  CHECK(t3.complex->count(1) == 189);
  CHECK(t3.complex->count(2) == 324);
  CHECK(t3.complex->count(3) == 162);
}

TEST_CASE("point times K is K") {
  auto k = complexes::projective_plane();
  CHECK(*product_complex(complexes::point(), k).complex == k);
  CHECK(*product_complex(k, complexes::point()).complex == k);
}

TEST_CASE("edge times edge is a square cut along its diagonal") {
  auto sq = product_complex(complexes::interval(), complexes::interval());
  const auto& k = *sq.complex;
  CHECK(k.count(2) == 2);
  CHECK(k.simplices(2) == std::vector<Simplex>{{0, 1, 3}, {0, 2, 3}});
  CHECK(k.contains({0, 3}));
  CHECK(!k.contains({1, 2}));
}

TEST_CASE("triple product of circles is associative up to relabeling") {
  auto c = complexes::circle();
  auto left = product_complex(*product_complex(c, c).complex, c);
  auto inner = product_complex(c, c);
  auto right = product_complex(c, *inner.complex);
  // (u,v),w and u,(v,w) both number the vertex u*9 + v*3 + w.
  CHECK(*left.complex == *right.complex);
}

TEST_CASE("euler characteristic is multiplicative") {
  std::vector<SimplicialComplex> models{complexes::point(), complexes::interval(), complexes::circle(),
                                        complexes::sphere(), complexes::projective_plane()};
  for (const auto& a : models)
    for (const auto& b : models) {
      if (a.vertex_count() * b.vertex_count() > 24) continue;
      auto p = product_complex(a, b);
      CHECK(p.complex->is_valid());
      CHECK(euler_characteristic(*p.complex) == euler_characteristic(a) * euler_characteristic(b));
    }
}

TEST_CASE("product edges project to edges or vertices") {
  auto a = complexes::sphere();
  auto b = complexes::circle();
  auto p = product_complex(a, b);
  for (int dim = 1; dim <= p.complex->dimension(); ++dim)
    for (const auto& s : p.complex->simplices(dim)) {
      CHECK(a.contains(p.project(s, 0)));
      CHECK(b.contains(p.project(s, 1)));
    }
  CHECK(p.vertex(2, 1) == 7);
  CHECK(p.projections[7] == std::pair<std::size_t, std::size_t>{2, 1});
}

TEST_CASE("index lookups") {
  auto k = complexes::circle();
  CHECK(k.index_of({0, 2}) == 1);
  CHECK_THROWS_AS(k.index_of({0, 1, 2}), std::out_of_range);
  CHECK(!k.find({1, 0}));
}
