// Parameterized analytic families (power singularity, abs, step, polynomial,
// bump, constant): exact pointwise evaluation, analytic derivatives up to
// order 3, integrability analysis, and refinement-ladder growth detection.
#ifndef WKP_SYMBOLIC_HPP
#define WKP_SYMBOLIC_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wkp/grid.hpp"

namespace wkp {

/// Unnormalized standard bump profile e^{-1/(1-|u|^2)} on |u| < 1 and its
/// partial derivatives up to order 3 (vector form, valid for n <= 2).
double bump_profile(const Coord& u, int dim);
double bump_profile_derivative(const MultiIndex& alpha, const Coord& u, int dim);

class SymbolicFunction {
 public:
  enum class Family { constant, polynomial, abs_value, heaviside, power, bump };

  static SymbolicFunction constant(double value);
  /// Polynomial in the first coordinate, c0 + c1 x + c2 x^2 + ...
  static SymbolicFunction polynomial(std::vector<double> coeffs);
  /// |x| (Euclidean norm).
  static SymbolicFunction abs_value();
  /// Step on the first coordinate: 1 where x_0 >= center.
  static SymbolicFunction heaviside(double center);
  /// |x - c|^{-a}, a >= 0.
  static SymbolicFunction power(Coord center, double exponent);
  /// Radial bump of the given radius, peak value e^{-1} at the center.
  static SymbolicFunction bump(Coord center, double radius);

  Family family() const { return family_; }
  double value(const Coord& x, int dim) const;

  bool has_derivative(const MultiIndex& alpha) const;
  /// Analytic D_alpha at x; throws if the family has no classical
  /// derivative of that order away from isolated points.
  double derivative(const MultiIndex& alpha, const Coord& x, int dim) const;

  std::vector<Coord> singular_points(int dim) const;
  /// Exponent parameter (power), center, etc. for oracle code.
  double param(int i) const { return params_.at(static_cast<std::size_t>(i)); }
  const std::vector<double>& params() const { return params_; }
  std::string describe() const;

 private:
  SymbolicFunction(Family f, std::vector<double> p) : family_(f), params_(std::move(p)) {}
  Family family_;
  std::vector<double> params_;
};

/// Exact pointwise sampling at grid midpoints. Throws if a parameter falls
/// outside the domain or a node lands on a non-finite value.
GridFunction sample(const SymbolicFunction& f, const Grid& g);

// --- integrability analysis -------------------------------------------------

/// Local behavior |x-c|^{-strength}; negative strength marks a vanishing
/// factor whose derivatives may still be singular (|x| has strength -1).
struct SingularFeature {
  Coord center{0, 0};
  double strength = 0;
};

struct FunctionProfile {
  int dim = 1;
  bool zero = false;
  std::vector<SingularFeature> powers;
  std::vector<double> jumps;  // x_0-locations of codimension-one jumps
  std::vector<std::pair<Coord, double>> support_balls;  // empty = whole domain
};

FunctionProfile profile_of(const SymbolicFunction& f, int dim);
/// Profile of a pointwise product: strengths add at shared centers, jumps
/// persist, supports intersect.
FunctionProfile product_profile(const FunctionProfile& a, const FunctionProfile& b);

enum class Membership { member, non_member, marginal };
const char* to_string(Membership m);

/// Analytic W^{k,p} verdict for the profile in dimension n: every power
/// feature must satisfy (strength + |alpha|) * p < n for all |alpha| <= k,
/// and jumps admit no weak first derivative. Verdicts within +-0.05 of the
/// critical value are declared marginal.
Membership membership_of_profile(const FunctionProfile& pr, int k, double p);

// --- refinement-ladder growth ------------------------------------------------

enum class Growth { integrable, divergent, marginal };
const char* to_string(Growth g);

struct GrowthReport {
  std::vector<double> resolutions;  // nodes per axis, one per rung
  std::vector<double> masses;       // ||f||_p^p per rung
  std::vector<double> slopes;       // successive log-log slopes of mass vs resolution
  double exponent = 0.0;            // asymptotic growth exponent, estimated from
                                    // successive mass increments
  Growth verdict = Growth::marginal;
};

/// Grid ladder at the given per-axis resolutions (same box).
std::vector<Grid> resolution_ladder(const BoxDomain& domain, const std::vector<int>& resolutions);

/// Growth classification from a mass series over increasing resolutions
/// (>= 4 entries). The mass either converges (increments decay
/// geometrically) or grows like resolution^e; the increment ratio estimates
/// e cleanly because the converged part of the mass cancels out of the
/// differences.
GrowthReport growth_from_series(std::vector<double> resolutions, std::vector<double> masses);

/// Divergence detector for f sampled across a refinement ladder (>= 4 rungs,
/// each >= 2x the previous): growth_from_series of ||f||_p^p per rung.
GrowthReport norm_growth(const std::function<GridFunction(const Grid&)>& sampler, double p,
                         const std::vector<Grid>& ladder);
GrowthReport norm_growth(const SymbolicFunction& f, double p, const std::vector<Grid>& ladder);

}  // namespace wkp

#endif
