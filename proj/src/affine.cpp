#include <affinelag/affine.hpp>

#include <sstream>

namespace affinelag {

namespace {

std::string format_simplex(const Simplex& s) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ']';
  return os.str();
}

void validate_linear(const LocalSystem& system) {
  using Kind = AffineDataError::Kind;
  auto violation = validate_cocycle(system);
  if (!violation) return;
  switch (violation->kind) {
    case SystemViolation::Kind::WrongShape: throw AffineDataError(Kind::WrongShape, violation->simplex, violation->message());
    case SystemViolation::Kind::NotUnimodular: throw AffineDataError(Kind::NotUnimodular, violation->simplex, violation->message());
    case SystemViolation::Kind::CocycleFailure: throw AffineDataError(Kind::LinearCocycle, violation->simplex, violation->message());
  }
}

std::shared_ptr<const SimplicialComplex> shared_circle() {
  return std::make_shared<const SimplicialComplex>(complexes::circle());
}

}  // namespace

IntegralAffineData::IntegralAffineData(std::shared_ptr<const LocalSystem> linear, TwistedCochain translations)
    : linear_(std::move(linear)), translations_(std::move(translations)) {
  using Kind = AffineDataError::Kind;
  if (!linear_) throw std::invalid_argument("IntegralAffineData: null system");
  if (translations_.degree() != 1 || !same_system(translations_.system(), *linear_))
    throw AffineDataError(Kind::WrongShape, {}, "translations must be a 1-cochain in the linear system");
  validate_linear(*linear_);
  if (translations_.ring() != Ring::Q) translations_ = translations_.with_ring(Ring::Q);

  TwistedCochain d = coboundary(translations_);
  const auto& triangles = linear_->base().simplices(2);
  for (std::size_t t = 0; t < triangles.size(); ++t)
    for (const auto& v : d.value(t))
      if (v != 0)
        throw AffineDataError(Kind::AffineCocycle, triangles[t],
                              "affine cocycle condition fails on triangle " + format_simplex(triangles[t]));
}

IntegralAffineData::IntegralAffineData(std::shared_ptr<const LocalSystem> linear)
    : IntegralAffineData(linear, TwistedCochain(linear, 1, Ring::Q)) {}

bool operator==(const IntegralAffineData& a, const IntegralAffineData& b) {
  return same_system(a.linear(), b.linear()) && a.translations().values() == b.translations().values();
}

IntegralAffineData from_atlas(std::shared_ptr<const SimplicialComplex> nerve, std::size_t rank,
                              const std::vector<AtlasTransition>& transitions) {
  using Kind = AffineDataError::Kind;
  if (!nerve) throw std::invalid_argument("from_atlas: null complex");
  const std::size_t edges = nerve->count(1);
  std::vector<IntMatrix> rho(edges, IntMatrix::identity(rank));
  RationalVector t(edges * rank);
  std::vector<bool> seen(edges, false);

  for (const auto& tr : transitions) {
    Simplex edge{std::min(tr.from, tr.to), std::max(tr.from, tr.to)};
    auto index = tr.from == tr.to ? std::nullopt : nerve->find(edge);
    if (!index) throw AffineDataError(Kind::UnknownEdge, edge, "transition on " + format_simplex(edge) + " is not an edge of the complex");
    if (seen[*index]) throw AffineDataError(Kind::WrongShape, edge, "edge " + format_simplex(edge) + " has two transitions");
    seen[*index] = true;
    if (tr.linear.rows() != rank || tr.linear.cols() != rank || tr.translation.size() != rank)
      throw AffineDataError(Kind::WrongShape, edge, "transition on " + format_simplex(edge) + " has the wrong shape");
    if (!is_unimodular(tr.linear))
      throw AffineDataError(Kind::NotUnimodular, edge, "transport on edge " + format_simplex(edge) + " is non-unimodular");

    RationalVector translation;
    if (tr.from < tr.to) {
      rho[*index] = unimodular_inverse(tr.linear);
      translation = to_rational(rho[*index]) * tr.translation;
    } else {
      // Inverting the transition gives (A^{-1}, -A^{-1} d), so rho = A and t = -d.
      rho[*index] = tr.linear;
      for (const auto& v : tr.translation) translation.push_back(-v);
    }
    std::copy(translation.begin(), translation.end(), t.begin() + static_cast<std::ptrdiff_t>(*index * rank));
  }
  auto system = std::make_shared<const LocalSystem>(nerve, rank, std::move(rho));
  validate_linear(*system);
  return IntegralAffineData(system, TwistedCochain(system, 1, Ring::Q, std::move(t)));
}

RadianceClass radiance_class(const IntegralAffineData& data) {
  auto group = cohomology(data.linear_ptr(), 1, Ring::Q);
  auto coordinates = group.coordinates(data.translations());
  return {std::move(group), std::move(coordinates), data.translations()};
}

RadianceTest is_radiant(const IntegralAffineData& data) {
  RadianceTest out;
  out.witness = is_coboundary(data.translations());
  out.radiant = out.witness.has_value();
  return out;
}

bool is_strongly_integral(const IntegralAffineData& data) {
  return is_integral(radiance_class(data).coordinates.free);
}

TwistedCochain pullback_product_cochain(const ProductMap& product, std::shared_ptr<const LocalSystem> system,
                                        const TwistedCochain& first, const TwistedCochain& second) {
  if (first.degree() != second.degree()) throw std::invalid_argument("pullback_product_cochain: degrees differ");
  if (system->rank() != first.rank() + second.rank() || system->base_ptr() != product.complex)
    throw std::invalid_argument("pullback_product_cochain: system does not live on the product");
  const int p = first.degree();
  const std::size_t n1 = first.rank(), n = system->rank();
  const Ring ring = first.ring() == Ring::Z && second.ring() == Ring::Z ? Ring::Z : Ring::Q;
  const auto& simplices = product.complex->simplices(p);
  RationalVector values(simplices.size() * n);
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    auto a = product.project(simplices[s], 0);
    auto b = product.project(simplices[s], 1);
    if (static_cast<int>(a.size()) == p + 1) {
      auto v = first.value(a);
      std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(s * n));
    }
    if (static_cast<int>(b.size()) == p + 1) {
      auto v = second.value(b);
      std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(s * n + n1));
    }
  }
  return TwistedCochain(std::move(system), p, ring, std::move(values));
}

IntegralAffineData product(const IntegralAffineData& first, const IntegralAffineData& second) {
  auto map = product_complex(first.base(), second.base());
  auto system = std::make_shared<const LocalSystem>(pullback_product(map, first.linear(), second.linear()));
  auto t = pullback_product_cochain(map, system, first.translations(), second.translations());
  return IntegralAffineData(system, std::move(t));
}

namespace models {

IntegralAffineData circle(const Rational& scale) {
  auto system = std::make_shared<const LocalSystem>(LocalSystem::trivial(shared_circle(), 1));
  TwistedCochain t(system, 1, Ring::Q);
  t.set(Simplex{0, 2}, RationalVector{scale});
  return IntegralAffineData(system, std::move(t));
}

IntegralAffineData holonomy_circle(const IntMatrix& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw AffineDataError(AffineDataError::Kind::WrongShape, {0, 2}, "holonomy matrix must be square");
  auto system = std::make_shared<const LocalSystem>(LocalSystem::from_edges(shared_circle(), matrix.rows(), {{{0, 2}, matrix}}));
  return IntegralAffineData(system);
}

IntegralAffineData standard_torus(std::size_t k, const std::vector<RationalVector>& vectors) {
  if (k == 0 || vectors.size() != k) throw std::invalid_argument("standard_torus: need one vector per circle factor");
  for (const auto& v : vectors)
    if (v.size() != k) throw std::invalid_argument("standard_torus: translation vectors must have length k");
  auto base = shared_circle();
  for (std::size_t i = 1; i < k; ++i) base = product_complex(*base, complexes::circle()).complex;
  auto system = std::make_shared<const LocalSystem>(LocalSystem::trivial(base, k));

  // Vertex labels are base-3 numerals, first factor most significant.
  auto digit = [k](std::size_t vertex, std::size_t factor) {
    for (std::size_t i = factor + 1; i < k; ++i) vertex /= 3;
    return vertex % 3;
  };
  const auto& edges = base->simplices(1);
  RationalVector values(edges.size() * k);
  for (std::size_t e = 0; e < edges.size(); ++e)
    for (std::size_t i = 0; i < k; ++i)
      if (digit(edges[e][0], i) == 0 && digit(edges[e][1], i) == 2)
        for (std::size_t c = 0; c < k; ++c) values[e * k + c] += vectors[i][c];
  return IntegralAffineData(system, TwistedCochain(system, 1, Ring::Q, std::move(values)));
}

IntegralAffineData standard_torus(std::size_t k) {
  std::vector<RationalVector> vectors(k, RationalVector(k));
  for (std::size_t i = 0; i < k; ++i) vectors[i][i] = 1;
  return standard_torus(k, vectors);
}

IntegralAffineData product(const std::vector<IntegralAffineData>& factors) {
  if (factors.empty()) throw std::invalid_argument("product: no factors");
  IntegralAffineData out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = affinelag::product(out, factors[i]);
  return out;
}

IntegralAffineData y_model(const IntMatrix& a1, const IntMatrix& a2, const IntMatrix& a3) {
  return product({holonomy_circle(a1), holonomy_circle(a2), holonomy_circle(a3)});
}

IntMatrix unipotent(long n) { return IntMatrix{{1, 0}, {Integer(-n), 1}}; }

IntegralAffineData z_model(const std::vector<long>& n) {
  std::vector<IntegralAffineData> factors;
  for (long v : n) factors.push_back(holonomy_circle(unipotent(v)));
  return product(factors);
}

}  // namespace models

IntegralAffineData generate(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelSpec::Kind::Circle: return models::circle(spec.scale);
    case ModelSpec::Kind::HolonomyCircle: return models::holonomy_circle(spec.matrix);
    case ModelSpec::Kind::StandardTorus:
      return spec.vectors.empty() ? models::standard_torus(spec.k) : models::standard_torus(spec.k, spec.vectors);
    case ModelSpec::Kind::Product: {
      std::vector<IntegralAffineData> factors;
      for (const auto& f : spec.factors) factors.push_back(generate(f));
      return models::product(factors);
    }
  }
  throw std::invalid_argument("generate: unknown model kind");
}

}  // namespace affinelag
