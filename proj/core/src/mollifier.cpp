#include "wkp/mollifier.hpp"

#include <algorithm>
#include <cmath>

namespace wkp {

namespace {

// integral of the unnormalized profile over R^n, fine midpoint rule
double profile_mass(int dim) {
  const std::int64_t n = 200000;
  double s = 0.0;
  if (dim == 1) {
    const double h = 2.0 / static_cast<double>(n);
    for (std::int64_t j = 0; j < n; ++j) {
      const double y = -1.0 + (static_cast<double>(j) + 0.5) * h;
      s += bump_profile(Coord{y, 0.0}, 1);
    }
    return s * h;
  }
  // radial: 2 pi int_0^1 r e^{-1/(1-r^2)} dr
  const double h = 1.0 / static_cast<double>(n);
  for (std::int64_t j = 0; j < n; ++j) {
    const double r = (static_cast<double>(j) + 0.5) * h;
    s += r * bump_profile(Coord{r, 0.0}, 1);
  }
  return 2.0 * M_PI * s * h;
}

double cached_normalization(int dim) {
  static const double c1 = 1.0 / profile_mass(1);
  static const double c2 = 1.0 / profile_mass(2);
  return dim == 1 ? c1 : c2;
}

}  // namespace

Kernel::Kernel(int dim) : dim_(dim) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("kernel dimension must be 1 or 2");
  normalization_ = cached_normalization(dim);
}

double Kernel::value(const Coord& y) const { return normalization_ * bump_profile(y, dim_); }

double Kernel::derivative(const MultiIndex& alpha, const Coord& y) const {
  return normalization_ * bump_profile_derivative(alpha, y, dim_);
}

MollifierElement::MollifierElement(Kernel kernel, double epsilon)
    : kernel_(kernel), epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("mollifier epsilon must lie in (0, 1)");
}

double MollifierElement::value(const Coord& x) const {
  const double s = std::pow(epsilon_, -kernel_.dim());
  return s * kernel_.value(Coord{x[0] / epsilon_, x[1] / epsilon_});
}

double MollifierElement::derivative(const MultiIndex& alpha, const Coord& x) const {
  const double s = std::pow(epsilon_, -kernel_.dim() - alpha.order());
  return s * kernel_.derivative(alpha, Coord{x[0] / epsilon_, x[1] / epsilon_});
}

GridFunction MollifierElement::realize(const Grid& g) const {
  return make_mollifier(kernel_, epsilon_, g);
}

namespace {

void check_resolved(double epsilon, const Grid& g) {
  for (int i = 0; i < g.dim(); ++i)
    if (2.0 * epsilon / g.spacing(i) < 8.0)
      throw std::invalid_argument("epsilon under-resolved: need >= 8 nodes across its support");
}

void check_fits(double epsilon, const Grid& g) {
  const Coord origin{0.0, 0.0};
  if (!g.domain().contains(origin) || g.domain().boundary_distance(origin) <= epsilon)
    throw std::invalid_argument("mollifier support B(0, eps) does not fit inside the domain");
  if (!(epsilon < g.domain().min_half_length()))
    throw std::invalid_argument("epsilon must be smaller than the domain half-length");
}

}  // namespace

GridFunction make_mollifier(const Kernel& k, double epsilon, const Grid& g) {
  if (g.dim() != k.dim()) throw std::invalid_argument("kernel/grid dimension mismatch");
  MollifierElement phi(k, epsilon);
  check_fits(epsilon, g);
  check_resolved(epsilon, g);
  std::vector<double> values(static_cast<std::size_t>(g.size()));
  for (std::int64_t i = 0; i < g.size(); ++i)
    values[static_cast<std::size_t>(i)] = phi.value(g.node(i));
  return GridFunction(g, std::move(values));
}

namespace {

// Direct-sum convolution of f with a compactly supported lattice stencil.
GridFunction convolve_stencil(const GridFunction& f, double epsilon,
                              const std::function<double(const Coord&)>& weight) {
  const Grid& g = f.grid();
  const int dim = g.dim();
  check_resolved(epsilon, g);

  std::array<int, 2> reach{0, 0};
  for (int i = 0; i < dim; ++i)
    reach[static_cast<std::size_t>(i)] =
        static_cast<int>(std::ceil(epsilon / g.spacing(i)));

  // Stencil offsets with nonzero kernel weight, scaled by the cell volume.
  struct Tap {
    int di, dj;
    double w;
  };
  std::vector<Tap> taps;
  const double vol = g.cell_volume();
  const int rj = dim == 2 ? reach[1] : 0;
  for (int di = -reach[0]; di <= reach[0]; ++di)
    for (int dj = -rj; dj <= rj; ++dj) {
      const Coord off{di * g.spacing(0), dim == 2 ? dj * g.spacing(1) : 0.0};
      const double w = weight(off);
      if (w != 0.0) taps.push_back({di, dj, w * vol});
    }

  std::vector<double> out(static_cast<std::size_t>(g.size()), 0.0);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(g.size()), 0);
  const int ni = g.nodes(0);
  const int nj = dim == 2 ? g.nodes(1) : 1;
  bool any_trusted = false;
  for (int i = 0; i < ni; ++i) {
    for (int j = 0; j < nj; ++j) {
      const std::int64_t idx = g.index(i, j);
      double acc = 0.0;
      bool interior = g.domain().boundary_distance(g.node(idx)) > epsilon;
      bool inputs_ok = true;
      for (const auto& t : taps) {
        const int si = i - t.di, sj = j - t.dj;
        if (si < 0 || si >= ni || sj < 0 || sj >= nj) {
          inputs_ok = false;
          continue;  // truncated at the boundary; node is untrusted anyway
        }
        const std::int64_t s = g.index(si, sj);
        acc += t.w * f[s];
        if (!f.trusted(s)) inputs_ok = false;
      }
      out[static_cast<std::size_t>(idx)] = acc;
      const bool ok = interior && inputs_ok;
      mask[static_cast<std::size_t>(idx)] = ok ? 1 : 0;
      any_trusted = any_trusted || ok;
    }
  }
  if (!any_trusted)
    throw std::domain_error("epsilon exceeds the distance to the boundary everywhere: "
                            "empty trusted interior");
  GridFunction result(g, std::move(out));
  result.set_trust_mask(std::move(mask));
  return result;
}

}  // namespace

GridFunction convolve(const MollifierElement& phi, const GridFunction& f) {
  if (f.grid().dim() != phi.kernel().dim())
    throw std::invalid_argument("kernel/grid dimension mismatch");
  return convolve_stencil(f, phi.epsilon(), [&](const Coord& x) { return phi.value(x); });
}

GridFunction convolve_derivative(const MollifierElement& phi, const MultiIndex& alpha,
                                 const GridFunction& f) {
  if (f.grid().dim() != phi.kernel().dim())
    throw std::invalid_argument("kernel/grid dimension mismatch");
  if (alpha.order() == 0) return convolve(phi, f);
  return convolve_stencil(f, phi.epsilon(),
                          [&](const Coord& x) { return phi.derivative(alpha, x); });
}

SmoothNet::SmoothNet(Kernel k, std::vector<double> eps)
    : kernel(k), epsilons(std::move(eps)) {
  if (epsilons.empty()) throw std::invalid_argument("empty smoothing net");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw std::invalid_argument("net epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw std::invalid_argument("net epsilons must be strictly decreasing");
  }
}

SmoothNet SmoothNet::geometric(Kernel k, double eps0, int count) {
  std::vector<double> eps;
  for (int j = 0; j < count; ++j) eps.push_back(eps0 * std::pow(2.0, -j));
  return SmoothNet(k, std::move(eps));
}

std::vector<ConvergenceRow> net_convergence(const SmoothNet& net, const GridFunction& f,
                                            double p) {
  std::vector<ConvergenceRow> rows;
  for (double eps : net.epsilons) {
    MollifierElement phi(net.kernel, eps);
    GridFunction feps = convolve(phi, f);
    GridFunction err = feps - f;
    rows.push_back({eps, lp_norm_trusted(err, p), feps.trusted_fraction()});
  }
  return rows;
}

ClosureReport closure_check(const MollifierElement& a, const MollifierElement& b,
                            const Grid& g) {
  const double ea = a.epsilon(), eb = b.epsilon();
  const Coord origin{0.0, 0.0};
  if (g.domain().boundary_distance(origin) <= ea + eb)
    throw std::invalid_argument("domain too small to hold the convolution support");

  const GridFunction bg = b.realize(g);
  const GridFunction ag = a.realize(g);
  // a*b: reuse the lattice convolution; the support statement needs values
  // everywhere, so look at raw values and ignore the trust mask.
  GridFunction conv = convolve_stencil(bg, ea, [&](const Coord& x) { return a.value(x); });

  double vmax = 0.0;
  for (double v : conv.values()) vmax = std::max(vmax, std::abs(v));
  const double tol = 1e-12 * std::max(1.0, vmax);
  const double slack = g.max_spacing();
  bool conv_ok = true;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const Coord x = g.node(i);
    const double r = std::sqrt(x[0] * x[0] + (g.dim() == 2 ? x[1] * x[1] : 0.0));
    if (std::abs(conv[i]) > tol && r > ea + eb + slack) conv_ok = false;
  }
  bool pw_ok = true;
  const double emin = std::min(ea, eb);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const Coord x = g.node(i);
    const double r = std::sqrt(x[0] * x[0] + (g.dim() == 2 ? x[1] * x[1] : 0.0));
    if (ag[i] * bg[i] != 0.0 && r > emin) pw_ok = false;
  }
  return {conv_ok, pw_ok, integrate(conv)};
}

}  // namespace wkp
