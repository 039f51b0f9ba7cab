// The smooth algebra of mollifiers: the standard bump kernel, its
// epsilon-rescalings phi_eps(x) = eps^{-n} phi(x/eps), discrete convolution
// against grid functions, smoothing nets and their convergence tables.
#ifndef WKP_MOLLIFIER_HPP
#define WKP_MOLLIFIER_HPP

#include <vector>

#include "wkp/grid.hpp"
#include "wkp/symbolic.hpp"

namespace wkp {

/// Normalized standard bump: C * e^{-1/(1-|y|^2)} inside the open unit
/// ball, zero outside, with C fixed so the integral over R^n is 1
/// (fine-quadrature constant, cached per dimension).
class Kernel {
 public:
  explicit Kernel(int dim);

  int dim() const { return dim_; }
  double normalization() const { return normalization_; }
  double value(const Coord& y) const;
  double derivative(const MultiIndex& alpha, const Coord& y) const;

 private:
  int dim_;
  double normalization_;
};

/// phi_eps with compact support in the closed ball B(0, eps).
class MollifierElement {
 public:
  MollifierElement(Kernel kernel, double epsilon);

  const Kernel& kernel() const { return kernel_; }
  double epsilon() const { return epsilon_; }
  double value(const Coord& x) const;
  /// D_alpha phi_eps(x) = eps^{-n-|alpha|} (D_alpha phi)(x/eps).
  double derivative(const MultiIndex& alpha, const Coord& x) const;
  GridFunction realize(const Grid& g) const;

 private:
  Kernel kernel_;
  double epsilon_;
};

/// Grid realization of phi_eps. Requires the support ball to fit inside the
/// domain and the grid to resolve it (>= 8 nodes across [-eps, eps]).
GridFunction make_mollifier(const Kernel& k, double epsilon, const Grid& g);

/// f_eps(x) = sum_y phi_eps(x - y) f(y) prod(h_i), kernel evaluated exactly
/// at lattice offsets. Output values are flagged trusted only on the
/// eps-eroded interior dist(x, boundary) > eps; throws if that interior is
/// empty.
GridFunction convolve(const MollifierElement& phi, const GridFunction& f);

/// f * (D_alpha phi_eps), same erosion rules.
GridFunction convolve_derivative(const MollifierElement& phi, const MultiIndex& alpha,
                                 const GridFunction& f);

/// Strictly decreasing epsilon schedule sharing one kernel.
struct SmoothNet {
  Kernel kernel;
  std::vector<double> epsilons;

  SmoothNet(Kernel k, std::vector<double> eps);
  /// eps_j = eps0 * 2^{-j}, j = 0..count-1.
  static SmoothNet geometric(Kernel k, double eps0, int count);
};

struct ConvergenceRow {
  double epsilon;
  double error;             // ||f_eps - f||_{L^p} on the eroded interior
  double trusted_fraction;
};

/// One row per net member, ordered by decreasing epsilon.
std::vector<ConvergenceRow> net_convergence(const SmoothNet& net, const GridFunction& f,
                                            double p);

struct ClosureReport {
  bool conv_support_ok;       // supp(a*b) inside B(0, eps_a + eps_b) up to one cell
  bool pointwise_support_ok;  // supp(a.b) inside B(0, min(eps_a, eps_b)), exact
  double conv_mass;           // integral of a*b
};

/// Closure of the algebra under its two products, checked on a grid.
ClosureReport closure_check(const MollifierElement& a, const MollifierElement& b,
                            const Grid& g);

}  // namespace wkp

#endif
