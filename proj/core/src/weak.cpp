#include "wkp/weak.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

namespace wkp {

double PanelMember::value(const Coord& x) const {
  double v = 1.0;
  for (int i = 0; i < dim; ++i) {
    const Coord u{(x[static_cast<std::size_t>(i)] - center[static_cast<std::size_t>(i)]) /
                      radius[static_cast<std::size_t>(i)],
                  0.0};
    v *= bump_profile(u, 1);
  }
  return v;
}

double PanelMember::derivative(const MultiIndex& alpha, const Coord& x) const {
  double v = 1.0;
  for (int i = 0; i < dim; ++i) {
    const std::size_t si = static_cast<std::size_t>(i);
    const Coord u{(x[si] - center[si]) / radius[si], 0.0};
    const int m = alpha.a[si];
    v *= bump_profile_derivative(MultiIndex(m), u, 1) / std::pow(radius[si], m);
  }
  return v;
}

namespace {

double canonical_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TestFunctionPanel::TestFunctionPanel(const Grid& grid, int size, std::uint64_t seed)
    : grid_(grid) {
  if (size < 20) throw std::invalid_argument("panel size must be >= 20");
  std::mt19937_64 rng(seed);
  const int dim = grid.dim();
  const double scales[3] = {0.08, 0.16, 0.30};
  members_.reserve(static_cast<std::size_t>(size));
  for (int m = 0; m < size; ++m) {
    PanelMember pm;
    pm.dim = dim;
    for (int ax = 0; ax < dim; ++ax) {
      const std::size_t s = static_cast<std::size_t>(ax);
      const Interval iv = grid.domain().axis(ax);
      const double margin = grid.spacing(ax);  // one cell off the boundary
      const double len = iv.length();
      double r = scales[(m + ax) % 3] * len * (0.8 + 0.4 * canonical_uniform(rng));
      const double lo = iv.lo + margin + r, hi = iv.hi - margin - r;
      if (!(lo < hi)) {  // radius too large for the usable band; shrink it
        r = 0.25 * (len - 2.0 * margin);
      }
      // Stratified center: slot m of `size`, with jitter inside the slot.
      const double usable_lo = iv.lo + margin + r, usable_hi = iv.hi - margin - r;
      const double slot = (static_cast<double>(m) + canonical_uniform(rng)) /
                          static_cast<double>(size);
      pm.center[s] = usable_lo + slot * (usable_hi - usable_lo);
      pm.radius[s] = r;
    }
    members_.push_back(pm);
  }
}

GridFunction TestFunctionPanel::realize(int i) const {
  const PanelMember& pm = members_.at(static_cast<std::size_t>(i));
  std::vector<double> values(static_cast<std::size_t>(grid_.size()));
  for (std::int64_t j = 0; j < grid_.size(); ++j)
    values[static_cast<std::size_t>(j)] = pm.value(grid_.node(j));
  return GridFunction(grid_, std::move(values));
}

GridFunction TestFunctionPanel::realize_derivative(int i, const MultiIndex& alpha) const {
  const PanelMember& pm = members_.at(static_cast<std::size_t>(i));
  std::vector<double> values(static_cast<std::size_t>(grid_.size()));
  for (std::int64_t j = 0; j < grid_.size(); ++j)
    values[static_cast<std::size_t>(j)] = pm.derivative(alpha, grid_.node(j));
  return GridFunction(grid_, std::move(values));
}

double TestFunctionPanel::sobolev_w1_norm(int i, int m) const {
  double total = 0.0;
  for (const MultiIndex& beta : multi_indices_up_to(m, grid_.dim())) {
    const GridFunction d = realize_derivative(i, beta);
    double s = 0.0;
    for (double v : d.values()) s += std::abs(v);
    total += s * grid_.cell_volume();
  }
  return total;
}

double verify_weak_derivative(const GridFunction& f, const GridFunction& u,
                              const MultiIndex& alpha, const TestFunctionPanel& panel) {
  if (!(f.grid() == panel.grid()) || !(u.grid() == panel.grid()))
    throw std::invalid_argument("panel and functions must share a grid");
  if (alpha.order() < 1 || alpha.order() > 3)
    throw std::invalid_argument("weak derivative order must be in [1,3]");
  const double sign = (alpha.order() % 2 == 0) ? 1.0 : -1.0;
  double worst = 0.0;
  for (int i = 0; i < panel.size(); ++i) {
    const GridFunction phi = panel.realize(i);
    const GridFunction dphi = panel.realize_derivative(i, alpha);
    const double lhs = integrate(u * phi);
    const double rhs = sign * integrate(f * dphi);
    const double denom = panel.sobolev_w1_norm(i, alpha.order());
    worst = std::max(worst, std::abs(lhs - rhs) / denom);
  }
  return worst;
}

GridFunction estimate_weak_derivative(const GridFunction& f, const MultiIndex& alpha,
                                      double eps, const Kernel& kernel) {
  return convolve_derivative(MollifierElement(kernel, eps), alpha, f);
}

double mollify_commutes(const GridFunction& f, const GridFunction& u, const MultiIndex& alpha,
                        double eps, const Kernel& kernel) {
  const GridFunction lhs = estimate_weak_derivative(f, alpha, eps, kernel);
  const GridFunction rhs = convolve(MollifierElement(kernel, eps), u);
  return sup_distance_trusted(lhs, rhs);
}

namespace {

double total_norm(std::vector<SobolevTerm>& terms, double p) {
  if (p == kInfinity) {
    double s = 0.0;
    for (const auto& t : terms) s += t.norm;
    return s;
  }
  double s = 0.0;
  for (const auto& t : terms) s += std::pow(t.norm, p);
  return std::pow(s, 1.0 / p);
}

Membership alpha_verdict(const FunctionProfile& pr, int order, double p) {
  // Verdict for D_alpha f alone in L^p: shift every power strength by the order.
  FunctionProfile shifted = pr;
  for (auto& s : shifted.powers) s.strength += order;
  if (!shifted.jumps.empty() && order >= 1) return Membership::non_member;
  shifted.jumps.clear();
  return membership_of_profile(shifted, 0, p);
}

}  // namespace

SobolevReport sobolev_norm(const SymbolicFunction& f, const Grid& g, int k, double p) {
  SobolevReport rep;
  rep.k = k;
  rep.p = p;
  const FunctionProfile pr = profile_of(f, g.dim());
  for (const MultiIndex& alpha : multi_indices_up_to(k, g.dim())) {
    if (!f.has_derivative(alpha))
      throw std::domain_error("analytic derivative unavailable for " + f.describe());
    GridFunction d =
        alpha.order() == 0
            ? sample(f, g)
            : [&] {
                std::vector<double> values(static_cast<std::size_t>(g.size()));
                for (std::int64_t j = 0; j < g.size(); ++j) {
                  const double v = f.derivative(alpha, g.node(j), g.dim());
                  if (!std::isfinite(v))
                    throw std::domain_error("derivative singular at a grid node");
                  values[static_cast<std::size_t>(j)] = v;
                }
                return GridFunction(g, std::move(values));
              }();
    rep.terms.push_back({alpha, lp_norm(d, p), alpha_verdict(pr, alpha.order(), p)});
  }
  rep.total = total_norm(rep.terms, p);
  return rep;
}

SobolevReport sobolev_norm_estimated(const GridFunction& f, int k, double p, double eps,
                                     const Kernel& kernel) {
  SobolevReport rep;
  rep.k = k;
  rep.p = p;
  for (const MultiIndex& alpha : multi_indices_up_to(k, f.grid().dim())) {
    if (alpha.order() == 0) {
      rep.terms.push_back({alpha, lp_norm(f, p), Membership::member});
      continue;
    }
    const GridFunction d = estimate_weak_derivative(f, alpha, eps, kernel);
    rep.terms.push_back({alpha, lp_norm_trusted(d, p), Membership::member});
  }
  rep.total = total_norm(rep.terms, p);
  return rep;
}

SobolevReport sobolev_norm_supplied(
    const GridFunction& f,
    const std::vector<std::pair<MultiIndex, GridFunction>>& derivatives, int k, double p) {
  SobolevReport rep;
  rep.k = k;
  rep.p = p;
  for (const MultiIndex& alpha : multi_indices_up_to(k, f.grid().dim())) {
    if (alpha.order() == 0) {
      rep.terms.push_back({alpha, lp_norm(f, p), Membership::member});
      continue;
    }
    const auto it = std::find_if(derivatives.begin(), derivatives.end(),
                                 [&](const auto& kv) { return kv.first == alpha; });
    if (it == derivatives.end())
      throw std::invalid_argument("supplied derivative missing for a required multi-index");
    rep.terms.push_back({alpha, lp_norm(it->second, p), Membership::member});
  }
  rep.total = total_norm(rep.terms, p);
  return rep;
}

Membership sobolev_membership(const SymbolicFunction& f, int k, double p, int dim) {
  return membership_of_profile(profile_of(f, dim), k, p);
}

GrowthReport derivative_mass_growth(const SymbolicFunction& f, const MultiIndex& alpha,
                                    double p, const Grid& g,
                                    const std::vector<double>& epsilons, const Kernel& kernel) {
  const GridFunction fg = sample(f, g);
  std::vector<double> resolutions, masses;
  for (double eps : epsilons) {
    const GridFunction d = estimate_weak_derivative(fg, alpha, eps, kernel);
    double s = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i)
      if (d.trusted(i)) s += std::pow(std::abs(d[i]), p);
    resolutions.push_back(1.0 / eps);
    masses.push_back(s * g.cell_volume());
  }
  return growth_from_series(std::move(resolutions), std::move(masses));
}

GridFunction piecewise_constant(const Grid& g, const std::vector<double>& breakpoints,
                                const std::vector<double>& heights) {
  if (g.dim() != 1) throw std::invalid_argument("piecewise_constant is 1-D only");
  if (heights.size() != breakpoints.size() + 1)
    throw std::invalid_argument("need one height per segment");
  std::vector<double> values(static_cast<std::size_t>(g.size()));
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i)[0];
    std::size_t seg = 0;
    while (seg < breakpoints.size() && x >= breakpoints[seg]) ++seg;
    values[static_cast<std::size_t>(i)] = heights[seg];
  }
  return GridFunction(g, std::move(values));
}

namespace {

// Equally spaced interior breakpoints snapped to cell boundaries.
std::vector<double> candidate_breakpoints(const Grid& g, int count) {
  const Interval iv = g.domain().axis(0);
  const double h = g.spacing(0);
  std::vector<double> pts;
  for (int j = 1; j <= count; ++j) {
    const double raw = iv.lo + iv.length() * static_cast<double>(j) /
                                  static_cast<double>(count + 1);
    const double snapped = iv.lo + std::round((raw - iv.lo) / h) * h;
    pts.push_back(snapped);
  }
  return pts;
}

struct PanelQuadrature {
  // prefix[i][m]: integral of phi_i over nodes < m (cell-boundary cut m).
  std::vector<std::vector<double>> prefix;
  std::vector<double> targets;  // (-1)^{|a|} int f D_a phi_i
  std::vector<double> denoms;   // ||phi_i||_{W^{|a|,1}}
};

PanelQuadrature panel_quadrature(const GridFunction& f, const MultiIndex& alpha,
                                 const TestFunctionPanel& panel) {
  const Grid& g = panel.grid();
  const double sign = (alpha.order() % 2 == 0) ? 1.0 : -1.0;
  PanelQuadrature q;
  for (int i = 0; i < panel.size(); ++i) {
    const GridFunction phi = panel.realize(i);
    std::vector<double> pre(static_cast<std::size_t>(g.size()) + 1, 0.0);
    for (std::int64_t m = 0; m < g.size(); ++m)
      pre[static_cast<std::size_t>(m) + 1] =
          pre[static_cast<std::size_t>(m)] + phi[m] * g.cell_volume();
    q.prefix.push_back(std::move(pre));
    const GridFunction dphi = panel.realize_derivative(i, alpha);
    q.targets.push_back(sign * integrate(f * dphi));
    q.denoms.push_back(panel.sobolev_w1_norm(i, alpha.order()));
  }
  return q;
}

std::vector<std::size_t> cut_indices(const Grid& g, const std::vector<double>& breakpoints) {
  const Interval iv = g.domain().axis(0);
  const double h = g.spacing(0);
  std::vector<std::size_t> cuts;
  for (double b : breakpoints)
    cuts.push_back(static_cast<std::size_t>(std::llround((b - iv.lo) / h)));
  return cuts;
}

}  // namespace

CandidateSearchResult piecewise_constant_search(const GridFunction& f, const MultiIndex& alpha,
                                                const TestFunctionPanel& panel,
                                                int breakpoint_count) {
  const Grid& g = panel.grid();
  if (g.dim() != 1) throw std::invalid_argument("candidate search is 1-D only");
  if (breakpoint_count < 1 || breakpoint_count > 12)
    throw std::invalid_argument("breakpoint count must be in [1,12]");

  const std::vector<double> all_pts = candidate_breakpoints(g, breakpoint_count);
  const std::vector<std::size_t> all_cuts = cut_indices(g, all_pts);
  const PanelQuadrature q = panel_quadrature(f, alpha, panel);
  const int P = panel.size();
  const std::size_t end = static_cast<std::size_t>(g.size());

  CandidateSearchResult result;
  result.floor = kInfinity;
  const std::uint32_t subsets = 1u << breakpoint_count;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::vector<std::size_t> cuts{0};
    std::vector<double> pts;
    for (int b = 0; b < breakpoint_count; ++b)
      if (mask & (1u << b)) {
        cuts.push_back(all_cuts[static_cast<std::size_t>(b)]);
        pts.push_back(all_pts[static_cast<std::size_t>(b)]);
      }
    cuts.push_back(end);
    const int S = static_cast<int>(cuts.size()) - 1;

    // Weighted least squares for the segment heights.
    Eigen::MatrixXd A(P, S);
    Eigen::VectorXd b(P);
    for (int i = 0; i < P; ++i) {
      const auto& pre = q.prefix[static_cast<std::size_t>(i)];
      for (int s = 0; s < S; ++s)
        A(i, s) = (pre[cuts[static_cast<std::size_t>(s) + 1]] -
                   pre[cuts[static_cast<std::size_t>(s)]]) /
                  q.denoms[static_cast<std::size_t>(i)];
      b(i) = q.targets[static_cast<std::size_t>(i)] / q.denoms[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = (A.transpose() * A).ldlt().solve(A.transpose() * b);
    const double res = (A * c - b).cwiseAbs().maxCoeff();
    ++result.candidates_tested;
    if (res < result.floor) {
      result.floor = res;
      result.best_breakpoints = pts;
      result.best_heights.assign(c.data(), c.data() + S);
    }
  }
  return result;
}

double panel_frame_constant(const TestFunctionPanel& panel, int breakpoint_count) {
  const Grid& g = panel.grid();
  if (g.dim() != 1) throw std::invalid_argument("frame constant is 1-D only");
  const std::vector<double> pts = candidate_breakpoints(g, breakpoint_count);
  std::vector<std::size_t> cuts{0};
  for (std::size_t c : cut_indices(g, pts)) cuts.push_back(c);
  cuts.push_back(static_cast<std::size_t>(g.size()));
  const int S = static_cast<int>(cuts.size()) - 1;
  const int P = panel.size();
  const double h = g.spacing(0);

  Eigen::MatrixXd AW(P, S);  // rows scaled by 1/||phi_i||, columns by 1/sqrt(w_s)
  for (int i = 0; i < P; ++i) {
    const GridFunction phi = panel.realize(i);
    std::vector<double> pre(static_cast<std::size_t>(g.size()) + 1, 0.0);
    for (std::int64_t m = 0; m < g.size(); ++m)
      pre[static_cast<std::size_t>(m) + 1] = pre[static_cast<std::size_t>(m)] + phi[m] * h;
    const double denom = panel.sobolev_w1_norm(i, 1);
    for (int s = 0; s < S; ++s) {
      const double seg = pre[cuts[static_cast<std::size_t>(s) + 1]] -
                         pre[cuts[static_cast<std::size_t>(s)]];
      const double w = h * static_cast<double>(cuts[static_cast<std::size_t>(s) + 1] -
                                               cuts[static_cast<std::size_t>(s)]);
      AW(i, s) = seg / (denom * std::sqrt(w));
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(AW);
  const double sigma_min = svd.singularValues().tail(1)(0);
  const double measure = g.domain().measure();
  // ||u||_1 <= sqrt(|Omega| P) / sigma_min * maxres(u); factor 2 covers the
  // triangle inequality between two passing candidates.
  return 2.0 * std::sqrt(measure * static_cast<double>(P)) / sigma_min;
}

}  // namespace wkp
