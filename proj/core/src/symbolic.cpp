#include "wkp/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace wkp {

namespace {

double sq_norm(const Coord& u, int dim) {
  double s = u[0] * u[0];
  if (dim == 2) s += u[1] * u[1];
  return s;
}

double norm(const Coord& u, int dim) { return std::sqrt(sq_norm(u, dim)); }

// Derivative tensors of w(u) = -1/(1 - |u|^2); t = 1 - |u|^2.
double w_1(const Coord& u, int i, double t) { return -2.0 * u[static_cast<std::size_t>(i)] / (t * t); }

double w_2(const Coord& u, int i, int j, double t) {
  const double d = (i == j) ? 1.0 : 0.0;
  const double ui = u[static_cast<std::size_t>(i)], uj = u[static_cast<std::size_t>(j)];
  return -2.0 * d / (t * t) - 8.0 * ui * uj / (t * t * t);
}

double w_3(const Coord& u, int i, int j, int k, double t) {
  const double ui = u[static_cast<std::size_t>(i)], uj = u[static_cast<std::size_t>(j)],
               uk = u[static_cast<std::size_t>(k)];
  const double dij = (i == j) ? 1.0 : 0.0, dik = (i == k) ? 1.0 : 0.0, djk = (j == k) ? 1.0 : 0.0;
  const double t3 = t * t * t;
  return -8.0 * (dij * uk + dik * uj + djk * ui) / t3 - 48.0 * ui * uj * uk / (t3 * t);
}

std::vector<int> directions(const MultiIndex& alpha) {
  std::vector<int> dirs;
  for (int axis = 0; axis < 2; ++axis)
    for (int r = 0; r < alpha.a[static_cast<std::size_t>(axis)]; ++r) dirs.push_back(axis);
  return dirs;
}

}  // namespace

double bump_profile(const Coord& u, int dim) {
  const double t = 1.0 - sq_norm(u, dim);
  if (t <= 0.0) return 0.0;
  const double w = -1.0 / t;
  if (w < -700.0) return 0.0;
  return std::exp(w);
}

double bump_profile_derivative(const MultiIndex& alpha, const Coord& u, int dim) {
  const int order = alpha.order();
  if (order == 0) return bump_profile(u, dim);
  if (order > 3) throw std::invalid_argument("bump derivatives supported up to order 3");
  const double t = 1.0 - sq_norm(u, dim);
  if (t <= 0.0) return 0.0;
  const double w = -1.0 / t;
  if (w < -700.0) return 0.0;
  const double ew = std::exp(w);
  const auto d = directions(alpha);
  if (order == 1) return w_1(u, d[0], t) * ew;
  if (order == 2) {
    const double wi = w_1(u, d[0], t), wj = w_1(u, d[1], t);
    return (w_2(u, d[0], d[1], t) + wi * wj) * ew;
  }
  const double wi = w_1(u, d[0], t), wj = w_1(u, d[1], t), wk = w_1(u, d[2], t);
  const double wij = w_2(u, d[0], d[1], t), wik = w_2(u, d[0], d[2], t),
               wjk = w_2(u, d[1], d[2], t);
  return (w_3(u, d[0], d[1], d[2], t) + wij * wk + wik * wj + wjk * wi + wi * wj * wk) * ew;
}

SymbolicFunction SymbolicFunction::constant(double value) {
  return SymbolicFunction(Family::constant, {value});
}

SymbolicFunction SymbolicFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return SymbolicFunction(Family::polynomial, std::move(coeffs));
}

SymbolicFunction SymbolicFunction::abs_value() {
  return SymbolicFunction(Family::abs_value, {});
}

SymbolicFunction SymbolicFunction::heaviside(double center) {
  return SymbolicFunction(Family::heaviside, {center});
}

SymbolicFunction SymbolicFunction::power(Coord center, double exponent) {
  if (exponent < 0.0) throw std::invalid_argument("power exponent must be >= 0");
  return SymbolicFunction(Family::power, {center[0], center[1], exponent});
}

SymbolicFunction SymbolicFunction::bump(Coord center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump radius must be > 0");
  return SymbolicFunction(Family::bump, {center[0], center[1], radius});
}

double SymbolicFunction::value(const Coord& x, int dim) const {
  switch (family_) {
    case Family::constant:
      return params_[0];
    case Family::polynomial: {
      double v = 0.0;
      for (std::size_t i = params_.size(); i-- > 0;) v = v * x[0] + params_[i];
      return v;
    }
    case Family::abs_value:
      return norm(x, dim);
    case Family::heaviside:
      return x[0] >= params_[0] ? 1.0 : 0.0;
    case Family::power: {
      const Coord d{x[0] - params_[0], x[1] - params_[1]};
      const double a = params_[2];
      if (a == 0.0) return 1.0;
      return std::pow(norm(d, dim), -a);
    }
    case Family::bump: {
      const double r = params_[2];
      const Coord u{(x[0] - params_[0]) / r, (x[1] - params_[1]) / r};
      return bump_profile(u, dim);
    }
  }
  return 0.0;
}

bool SymbolicFunction::has_derivative(const MultiIndex& alpha) const {
  const int m = alpha.order();
  if (m == 0) return true;
  if (m > 3) return false;
  switch (family_) {
    case Family::constant:
    case Family::polynomial:
    case Family::bump:
      return true;
    case Family::abs_value:
      return m == 1;
    case Family::heaviside:
      return false;
    case Family::power:
      return true;
  }
  return false;
}

double SymbolicFunction::derivative(const MultiIndex& alpha, const Coord& x, int dim) const {
  const int m = alpha.order();
  if (m == 0) return value(x, dim);
  if (!has_derivative(alpha))
    throw std::domain_error("no classical derivative of order " + std::to_string(m) +
                            " for " + describe());
  switch (family_) {
    case Family::constant:
      return 0.0;
    case Family::polynomial: {
      if (alpha.a[1] > 0) return 0.0;
      double v = 0.0;
      for (std::size_t i = params_.size(); i-- > static_cast<std::size_t>(m);) {
        double c = params_[i];
        for (int r = 0; r < m; ++r) c *= static_cast<double>(i - static_cast<std::size_t>(r));
        v = v * x[0] + c;
      }
      return v;
    }
    case Family::abs_value: {
      if (dim == 1) return x[0] > 0.0 ? 1.0 : (x[0] < 0.0 ? -1.0 : 0.0);
      const double r = norm(x, dim);
      if (r == 0.0) return 0.0;
      return (alpha.a[0] == 1 ? x[0] : x[1]) / r;
    }
    case Family::heaviside:
      return 0.0;  // unreachable, has_derivative refuses
    case Family::power: {
      const double a = params_[2];
      if (a == 0.0) return 0.0;
      const Coord t{x[0] - params_[0], x[1] - params_[1]};
      if (dim == 1) {
        const double s = t[0] >= 0.0 ? 1.0 : -1.0;
        double c = 1.0;
        for (int i = 0; i < m; ++i) c *= -(a + i);
        const double sgn = (m % 2 == 0) ? 1.0 : s;
        return c * sgn * std::pow(std::abs(t[0]), -a - m);
      }
      const double rho = norm(t, dim);
      const auto dirs = directions(alpha);
      const double p2 = std::pow(rho, -a - 2), p4 = std::pow(rho, -a - 4);
      auto tt = [&](int i) { return t[static_cast<std::size_t>(i)]; };
      if (m == 1) return -a * p2 * tt(dirs[0]);
      if (m == 2) {
        const double d = dirs[0] == dirs[1] ? 1.0 : 0.0;
        return -a * p2 * d + a * (a + 2.0) * p4 * tt(dirs[0]) * tt(dirs[1]);
      }
      const double p6 = std::pow(rho, -a - 6);
      const int i = dirs[0], j = dirs[1], k = dirs[2];
      const double dij = i == j ? 1.0 : 0.0, dik = i == k ? 1.0 : 0.0, djk = j == k ? 1.0 : 0.0;
      return a * (a + 2.0) *
                 (p4 * (dij * tt(k) + dik * tt(j) + djk * tt(i)) -
                  (a + 4.0) * p6 * tt(i) * tt(j) * tt(k));
    }
    case Family::bump: {
      const double r = params_[2];
      const Coord u{(x[0] - params_[0]) / r, (x[1] - params_[1]) / r};
      return bump_profile_derivative(alpha, u, dim) / std::pow(r, m);
    }
  }
  return 0.0;
}

std::vector<Coord> SymbolicFunction::singular_points(int dim) const {
  (void)dim;
  switch (family_) {
    case Family::power:
      if (params_[2] > 0.0) return {Coord{params_[0], params_[1]}};
      return {};
    case Family::heaviside:
      return {Coord{params_[0], 0.0}};
    default:
      return {};
  }
}

std::string SymbolicFunction::describe() const {
  char buf[128];
  switch (family_) {
    case Family::constant:
      std::snprintf(buf, sizeof buf, "const %.17g", params_[0]);
      return buf;
    case Family::polynomial: {
      std::string s = "poly";
      for (double c : params_) {
        std::snprintf(buf, sizeof buf, " %.17g", c);
        s += buf;
      }
      return s;
    }
    case Family::abs_value:
      return "abs";
    case Family::heaviside:
      std::snprintf(buf, sizeof buf, "heaviside %.17g", params_[0]);
      return buf;
    case Family::power:
      std::snprintf(buf, sizeof buf, "power %.17g %.17g a=%.17g", params_[0], params_[1],
                    params_[2]);
      return buf;
    case Family::bump:
      std::snprintf(buf, sizeof buf, "bump %.17g %.17g r=%.17g", params_[0], params_[1],
                    params_[2]);
      return buf;
  }
  return "?";
}

GridFunction sample(const SymbolicFunction& f, const Grid& g) {
  const int dim = g.dim();
  // Parameter validity on this domain.
  if (f.family() == SymbolicFunction::Family::power ||
      f.family() == SymbolicFunction::Family::bump) {
    const Coord c{f.param(0), f.param(1)};
    if (!g.domain().contains(c))
      throw std::invalid_argument("center lies outside the domain: " + f.describe());
    if (f.family() == SymbolicFunction::Family::bump &&
        g.domain().boundary_distance(c) < f.param(2))
      throw std::invalid_argument("bump support sticks out of the domain: " + f.describe());
  }
  if (f.family() == SymbolicFunction::Family::heaviside) {
    const double c = f.param(0);
    if (!(c > g.domain().axis(0).lo && c < g.domain().axis(0).hi))
      throw std::invalid_argument("heaviside center outside the domain");
  }

  std::vector<double> values(static_cast<std::size_t>(g.size()));
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double v = f.value(g.node(i), dim);
    if (!std::isfinite(v))
      throw std::domain_error("sampled a non-finite value (grid node on a singularity): " +
                              f.describe());
    values[static_cast<std::size_t>(i)] = v;
  }

  std::vector<Coord> sing;
  for (const auto& p : f.singular_points(dim))
    if (g.domain().contains(p) || f.family() == SymbolicFunction::Family::heaviside)
      sing.push_back(p);
  return GridFunction(g, std::move(values), std::move(sing));
}

FunctionProfile profile_of(const SymbolicFunction& f, int dim) {
  FunctionProfile pr;
  pr.dim = dim;
  switch (f.family()) {
    case SymbolicFunction::Family::constant:
      pr.zero = f.param(0) == 0.0;
      break;
    case SymbolicFunction::Family::polynomial: {
      pr.zero = std::all_of(f.params().begin(), f.params().end(),
                            [](double c) { return c == 0.0; });
      break;
    }
    case SymbolicFunction::Family::abs_value:
      pr.powers.push_back({Coord{0.0, 0.0}, -1.0});
      break;
    case SymbolicFunction::Family::heaviside:
      pr.jumps.push_back(f.param(0));
      break;
    case SymbolicFunction::Family::power:
      if (f.param(2) > 0.0) pr.powers.push_back({Coord{f.param(0), f.param(1)}, f.param(2)});
      break;
    case SymbolicFunction::Family::bump:
      pr.support_balls.emplace_back(Coord{f.param(0), f.param(1)}, f.param(2));
      break;
  }
  return pr;
}

namespace {

bool same_point(const Coord& a, const Coord& b, int dim) {
  return norm(Coord{a[0] - b[0], a[1] - b[1]}, dim) < 1e-9;
}

bool inside_all(const Coord& p, const std::vector<std::pair<Coord, double>>& balls, int dim) {
  for (const auto& [c, r] : balls)
    if (!(norm(Coord{p[0] - c[0], p[1] - c[1]}, dim) < r)) return false;
  return true;
}

}  // namespace

FunctionProfile product_profile(const FunctionProfile& a, const FunctionProfile& b) {
  if (a.dim != b.dim) throw std::invalid_argument("profile dimension mismatch");
  FunctionProfile pr;
  pr.dim = a.dim;
  pr.zero = a.zero || b.zero;
  pr.support_balls = a.support_balls;
  pr.support_balls.insert(pr.support_balls.end(), b.support_balls.begin(),
                          b.support_balls.end());
  // Disjoint supports kill the product.
  for (std::size_t i = 0; i + 1 < pr.support_balls.size() && !pr.zero; ++i)
    for (std::size_t j = i + 1; j < pr.support_balls.size(); ++j) {
      const auto& [ci, ri] = pr.support_balls[i];
      const auto& [cj, rj] = pr.support_balls[j];
      if (norm(Coord{ci[0] - cj[0], ci[1] - cj[1]}, pr.dim) >= ri + rj) pr.zero = true;
    }
  if (pr.zero) return pr;

  for (const auto& s : a.powers) pr.powers.push_back(s);
  for (const auto& s : b.powers) {
    bool merged = false;
    for (auto& t : pr.powers)
      if (same_point(t.center, s.center, pr.dim)) {
        t.strength += s.strength;
        merged = true;
        break;
      }
    if (!merged) pr.powers.push_back(s);
  }
  // Features vanish where a support ball cuts them off.
  std::erase_if(pr.powers, [&](const SingularFeature& s) {
    return !inside_all(s.center, pr.support_balls, pr.dim);
  });
  for (double j : a.jumps) pr.jumps.push_back(j);
  for (double j : b.jumps)
    if (std::none_of(pr.jumps.begin(), pr.jumps.end(),
                     [&](double x) { return std::abs(x - j) < 1e-9; }))
      pr.jumps.push_back(j);
  std::erase_if(pr.jumps, [&](double j) {
    for (const auto& [c, r] : pr.support_balls)
      if (std::abs(j - c[0]) >= r) return true;
    return false;
  });
  return pr;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::member: return "member";
    case Membership::non_member: return "non-member";
    case Membership::marginal: return "marginal";
  }
  return "?";
}

Membership membership_of_profile(const FunctionProfile& pr, int k, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("membership requires p >= 1");
  if (k < 0 || k > 3) throw std::invalid_argument("membership supports k in [0,3]");
  if (pr.zero) return Membership::member;
  if (!pr.jumps.empty() && k >= 1) return Membership::non_member;

  const double n = static_cast<double>(pr.dim);
  constexpr double kBand = 0.05;
  bool marginal = false;
  for (const auto& s : pr.powers) {
    for (int m = 0; m <= k; ++m) {
      const double eff = s.strength + m;
      if (eff <= 0.0) continue;
      if (p == kInfinity) {
        if (eff > 1e-9) return Membership::non_member;
        continue;
      }
      const double crit = eff * p;
      if (crit > n + kBand) return Membership::non_member;
      if (crit >= n - kBand) marginal = true;
    }
  }
  return marginal ? Membership::marginal : Membership::member;
}

const char* to_string(Growth g) {
  switch (g) {
    case Growth::integrable: return "integrable";
    case Growth::divergent: return "divergent";
    case Growth::marginal: return "marginal";
  }
  return "?";
}

std::vector<Grid> resolution_ladder(const BoxDomain& domain,
                                    const std::vector<int>& resolutions) {
  std::vector<Grid> ladder;
  ladder.reserve(resolutions.size());
  for (int r : resolutions) {
    std::vector<int> nodes(static_cast<std::size_t>(domain.dim()), r);
    ladder.emplace_back(domain, nodes);
  }
  return ladder;
}

namespace {

double mass_p(const GridFunction& f, double p) {
  double s = 0.0;
  for (double v : f.values()) s += std::pow(std::abs(v), p);
  return s * f.grid().cell_volume();
}

}  // namespace

GrowthReport growth_from_series(std::vector<double> resolutions, std::vector<double> masses) {
  if (resolutions.size() != masses.size() || masses.size() < 4)
    throw std::invalid_argument("ladder too short (need >= 4 rungs)");
  GrowthReport rep;
  rep.resolutions = std::move(resolutions);
  rep.masses = std::move(masses);
  for (std::size_t i = 0; i + 1 < rep.masses.size(); ++i) {
    const double dm = std::log(rep.masses[i + 1] / rep.masses[i]);
    const double dr = std::log(rep.resolutions[i + 1] / rep.resolutions[i]);
    rep.slopes.push_back(dm / dr);
  }

  const std::size_t K = rep.masses.size();
  double mmax = 1.0;
  for (double m : rep.masses) mmax = std::max(mmax, m);
  std::vector<double> incr(K - 1);
  double imax = 0.0;
  for (std::size_t i = 0; i + 1 < K; ++i) {
    incr[i] = rep.masses[i + 1] - rep.masses[i];
    imax = std::max(imax, std::abs(incr[i]));
  }
  constexpr double kFlatTol = 1e-9;
  constexpr double kBand = 0.04;
  if (imax <= kFlatTol * mmax) {
    rep.exponent = 0.0;
    rep.verdict = Growth::integrable;
    return rep;
  }
  const double d1 = incr[K - 3], d2 = incr[K - 2];
  if (d1 == 0.0 || d2 == 0.0 || (d1 > 0) != (d2 > 0)) {
    // Oscillating increments: converged if the last step is negligible.
    rep.exponent = 0.0;
    rep.verdict = std::abs(d2) <= 1e-6 * mmax ? Growth::integrable : Growth::marginal;
    return rep;
  }
  const double r1 = std::sqrt(rep.resolutions[K - 3] * rep.resolutions[K - 2]);
  const double r2 = std::sqrt(rep.resolutions[K - 2] * rep.resolutions[K - 1]);
  rep.exponent = std::log(std::abs(d2) / std::abs(d1)) / std::log(r2 / r1);
  if (rep.exponent > kBand)
    rep.verdict = Growth::divergent;
  else if (rep.exponent < -kBand)
    rep.verdict = Growth::integrable;
  else
    rep.verdict = Growth::marginal;
  return rep;
}

GrowthReport norm_growth(const std::function<GridFunction(const Grid&)>& sampler, double p,
                         const std::vector<Grid>& ladder) {
  if (ladder.size() < 4) throw std::invalid_argument("ladder too short (need >= 4 rungs)");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i].nodes(0) < 2 * ladder[i - 1].nodes(0))
      throw std::invalid_argument("ladder rungs must each be >= 2x the previous resolution");
  std::vector<double> resolutions, masses;
  for (const auto& g : ladder) {
    resolutions.push_back(static_cast<double>(g.nodes(0)));
    masses.push_back(mass_p(sampler(g), p));
  }
  return growth_from_series(std::move(resolutions), std::move(masses));
}

GrowthReport norm_growth(const SymbolicFunction& f, double p, const std::vector<Grid>& ladder) {
  return norm_growth([&](const Grid& g) { return sample(f, g); }, p, ladder);
}

}  // namespace wkp
