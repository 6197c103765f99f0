#pragma once

#include <affinelag/twisted_cohomology.hpp>

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace affinelag {

/// Raised when affine data fails validation. `simplex` names the offending
/// edge or triangle when there is one.
class AffineDataError : public std::invalid_argument {
 public:
  enum class Kind { WrongShape, NotUnimodular, LinearCocycle, AffineCocycle, UnknownEdge };
  AffineDataError(Kind kind, Simplex simplex, const std::string& message)
      : std::invalid_argument(message), kind_(kind), simplex_(std::move(simplex)) {}
  Kind kind() const { return kind_; }
  const Simplex& simplex() const { return simplex_; }

 private:
  Kind kind_;
  Simplex simplex_;
};

/// Linear holonomy system plus a rational translation 1-cochain in it.
/// The affine cocycle condition is delta(translations) = 0.
class IntegralAffineData {
 public:
  /// Validates the system and the translation cocycle; throws AffineDataError.
  IntegralAffineData(std::shared_ptr<const LocalSystem> linear, TwistedCochain translations);

  /// Zero translations.
  explicit IntegralAffineData(std::shared_ptr<const LocalSystem> linear);

  const LocalSystem& linear() const { return *linear_; }
  const std::shared_ptr<const LocalSystem>& linear_ptr() const { return linear_; }
  const TwistedCochain& translations() const { return translations_; }
  const SimplicialComplex& base() const { return linear_->base(); }
  std::size_t rank() const { return linear_->rank(); }

 private:
  std::shared_ptr<const LocalSystem> linear_;
  TwistedCochain translations_;
};

bool operator==(const IntegralAffineData& a, const IntegralAffineData& b);

/// Coordinate change x_to = A x_from + d between the charts of two adjacent vertices.
struct AtlasTransition {
  std::size_t from;
  std::size_t to;
  IntMatrix linear;
  RationalVector translation;
};

/// Converts chart transitions into engine data: for an edge [a, b] with
/// a < b and transition (A, d) from a to b, rho([a,b]) = A^{-1} and
/// t([a,b]) = A^{-1} d. A transition listed from b to a is inverted first.
/// Edges without a transition get (I, 0).
IntegralAffineData from_atlas(std::shared_ptr<const SimplicialComplex> nerve, std::size_t rank,
                              const std::vector<AtlasTransition>& transitions);

struct RadianceClass {
  CohomologyGroup group;  // H^1(B; Q^n) in the linear system
  ClassCoordinates coordinates;
  TwistedCochain representative;
};

RadianceClass radiance_class(const IntegralAffineData& data);

struct RadianceTest {
  bool radiant = false;
  /// 0-cochain x with delta x = translations, present when radiant.
  std::optional<TwistedCochain> witness;
};

RadianceTest is_radiant(const IntegralAffineData& data);

/// True when the translation class comes from H^1(B; Z^n). Since the rational
/// group is computed in the integral free basis, this holds exactly when the
/// rational coordinates are integers.
bool is_strongly_integral(const IntegralAffineData& data);

/// Pulls back cochains on the two factors to the product and stacks them
/// blockwise. Simplices whose projection to a factor drops dimension get 0
/// in that block.
TwistedCochain pullback_product_cochain(const ProductMap& product, std::shared_ptr<const LocalSystem> system,
                                        const TwistedCochain& first, const TwistedCochain& second);

/// Product datum on the staircase triangulation.
IntegralAffineData product(const IntegralAffineData& first, const IntegralAffineData& second);

namespace models {

/// R / (scale Z): three-vertex circle, translation `scale` on the edge [0,2].
IntegralAffineData circle(const Rational& scale);

/// Three-vertex circle whose edge [0,2] carries `matrix`; zero translations.
IntegralAffineData holonomy_circle(const IntMatrix& matrix);

/// Staircase T^k with trivial rank-k holonomy; the i-th circle edge carries vectors[i].
IntegralAffineData standard_torus(std::size_t k, const std::vector<RationalVector>& vectors);

/// standard_torus with the unit vectors e_1 ... e_k.
IntegralAffineData standard_torus(std::size_t k);

/// Left-nested product of the factors.
IntegralAffineData product(const std::vector<IntegralAffineData>& factors);

/// Product of three holonomy circles.
IntegralAffineData y_model(const IntMatrix& a1, const IntMatrix& a2, const IntMatrix& a3);

/// Product of holonomy circles with matrices [[1,0],[-n_i,1]].
IntegralAffineData z_model(const std::vector<long>& n);

/// [[1,0],[-n,1]]
IntMatrix unipotent(long n);

}  // namespace models

struct ModelSpec {
  enum class Kind { Circle, HolonomyCircle, StandardTorus, Product };
  Kind kind = Kind::Circle;
  Rational scale = 1;
  IntMatrix matrix;
  std::size_t k = 0;
  std::vector<RationalVector> vectors;
  std::vector<ModelSpec> factors;
};

IntegralAffineData generate(const ModelSpec& spec);

}  // namespace affinelag
