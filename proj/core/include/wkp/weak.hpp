// Weak derivatives and Sobolev norms: verification of candidate derivatives
// against compactly supported test panels, mollification-based estimation,
// W^{k,p} reports, and the brute-force non-existence search for jumps.
#ifndef WKP_WEAK_HPP
#define WKP_WEAK_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "wkp/grid.hpp"
#include "wkp/mollifier.hpp"
#include "wkp/symbolic.hpp"

namespace wkp {

/// Product of per-axis bump profiles; C_c^infty with box support and exact
/// derivatives of every order we need.
struct PanelMember {
  int dim = 1;
  std::array<double, 2> center{0.0, 0.0};
  std::array<double, 2> radius{1.0, 1.0};

  double value(const Coord& x) const;
  double derivative(const MultiIndex& alpha, const Coord& x) const;
};

/// Randomized panel of test functions supported strictly inside the domain
/// (each member vanishes within one cell of the boundary). Centers are
/// stratified across the domain so small panels still cover it, radii cycle
/// through several scales; jitter comes from the seed.
class TestFunctionPanel {
 public:
  TestFunctionPanel(const Grid& grid, int size = 20, std::uint64_t seed = 0);

  const Grid& grid() const { return grid_; }
  const std::vector<PanelMember>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }

  /// Sampled member values / analytic derivatives on the panel grid.
  GridFunction realize(int i) const;
  GridFunction realize_derivative(int i, const MultiIndex& alpha) const;
  /// ||phi_i||_{W^{m,1}}: sum over |beta| <= m of integral |D_beta phi_i|.
  double sobolev_w1_norm(int i, int m) const;

 private:
  Grid grid_;
  std::vector<PanelMember> members_;
};

/// max over the panel of |int u phi - (-1)^{|alpha|} int f D_alpha phi|,
/// normalized per member by ||phi||_{W^{|alpha|,1}}.
double verify_weak_derivative(const GridFunction& f, const GridFunction& u,
                              const MultiIndex& alpha, const TestFunctionPanel& panel);

/// D_alpha(f_eps) computed as f * (D_alpha phi_eps); trusted on the
/// eps-eroded interior.
GridFunction estimate_weak_derivative(const GridFunction& f, const MultiIndex& alpha,
                                      double eps, const Kernel& kernel);

/// sup over co-trusted nodes of |D_alpha(f_eps) - phi_eps * u|; small when u
/// really is the alpha-th weak derivative of f.
double mollify_commutes(const GridFunction& f, const GridFunction& u, const MultiIndex& alpha,
                        double eps, const Kernel& kernel);

struct SobolevTerm {
  MultiIndex alpha;
  double norm = 0.0;
  Membership verdict = Membership::member;
};

struct SobolevReport {
  int k = 0;
  double p = 2.0;
  std::vector<SobolevTerm> terms;
  double total = 0.0;  // (sum ||D_a f||_p^p)^{1/p}, or sum of sups for p = inf
};

/// Analytic derivative source.
SobolevReport sobolev_norm(const SymbolicFunction& f, const Grid& g, int k, double p);
/// Mollified derivative source; norms taken over the eroded interior.
SobolevReport sobolev_norm_estimated(const GridFunction& f, int k, double p, double eps,
                                     const Kernel& kernel);
/// Caller-supplied derivatives, keyed by multi-index.
SobolevReport sobolev_norm_supplied(
    const GridFunction& f,
    const std::vector<std::pair<MultiIndex, GridFunction>>& derivatives, int k, double p);

/// Analytic W^{k,p} membership verdict for a symbolic family member.
Membership sobolev_membership(const SymbolicFunction& f, int k, double p, int dim);

/// Numeric cross-check of membership: mass of D_alpha(f_eps) in L^p as eps
/// shrinks. Divergent growth against 1/eps flags D_alpha f outside L^p.
GrowthReport derivative_mass_growth(const SymbolicFunction& f, const MultiIndex& alpha,
                                    double p, const Grid& g,
                                    const std::vector<double>& epsilons, const Kernel& kernel);

// --- brute-force candidate search (jump non-differentiability) ---------------

/// Piecewise-constant function with the given breakpoints (sorted, interior)
/// and one height per segment.
GridFunction piecewise_constant(const Grid& g, const std::vector<double>& breakpoints,
                                const std::vector<double>& heights);

struct CandidateSearchResult {
  double floor = 0.0;  // min over candidates of the max normalized residual
  std::vector<double> best_breakpoints;
  std::vector<double> best_heights;
  int candidates_tested = 0;
};

/// Exhaustive search over piecewise-constant candidates u (every subset of
/// `breakpoint_count` equally spaced cell boundaries, least-squares heights)
/// for one with small verify_weak_derivative residual. A floor that stays
/// above tolerance certifies that no weak alpha-derivative exists in the
/// family. 1-D only.
CandidateSearchResult piecewise_constant_search(const GridFunction& f, const MultiIndex& alpha,
                                                const TestFunctionPanel& panel,
                                                int breakpoint_count = 12);

/// Inverse-frame constant of the panel over the finest piecewise-constant
/// family: ||u1 - u2||_{L^1} <= C_panel * t whenever both candidates pass
/// verification at tolerance t.
double panel_frame_constant(const TestFunctionPanel& panel, int breakpoint_count = 12);

}  // namespace wkp

#endif
