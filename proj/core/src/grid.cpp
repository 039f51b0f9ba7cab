#include "wkp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace wkp {

std::vector<MultiIndex> multi_indices_up_to(int k, int dim) {
  if (k < 0 || k > 3) throw std::invalid_argument("derivative order must be in [0,3]");
  if (dim != 1 && dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
  std::vector<MultiIndex> out;
  for (int order = 0; order <= k; ++order) {
    if (dim == 1) {
      out.emplace_back(order, 0);
    } else {
      for (int a0 = order; a0 >= 0; --a0) out.emplace_back(a0, order - a0);
    }
  }
  return out;
}

BoxDomain::BoxDomain(std::vector<Interval> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > 2)
    throw std::invalid_argument("domain dimension must be 1 or 2");
  for (const auto& ax : axes_)
    if (!(ax.lo < ax.hi)) throw std::invalid_argument("domain interval must have lo < hi");
}

double BoxDomain::measure() const {
  double m = 1.0;
  for (const auto& ax : axes_) m *= ax.length();
  return m;
}

bool BoxDomain::contains(const Coord& p) const {
  for (int i = 0; i < dim(); ++i)
    if (!(p[static_cast<std::size_t>(i)] > axes_[static_cast<std::size_t>(i)].lo &&
          p[static_cast<std::size_t>(i)] < axes_[static_cast<std::size_t>(i)].hi))
      return false;
  return true;
}

double BoxDomain::boundary_distance(const Coord& p) const {
  double d = kInfinity;
  for (int i = 0; i < dim(); ++i) {
    const auto& ax = axes_[static_cast<std::size_t>(i)];
    d = std::min(d, std::min(p[static_cast<std::size_t>(i)] - ax.lo,
                             ax.hi - p[static_cast<std::size_t>(i)]));
  }
  return d;
}

double BoxDomain::min_half_length() const {
  double m = kInfinity;
  for (const auto& ax : axes_) m = std::min(m, 0.5 * ax.length());
  return m;
}

Grid::Grid(BoxDomain domain, std::vector<int> nodes_per_axis)
    : domain_(std::move(domain)), nodes_(std::move(nodes_per_axis)) {
  if (static_cast<int>(nodes_.size()) != domain_.dim())
    throw std::invalid_argument("nodes_per_axis length must equal domain dimension");
  for (int n : nodes_)
    if (n < 8) throw std::invalid_argument("grid needs at least 8 nodes per axis");
}

std::int64_t Grid::size() const {
  std::int64_t s = 1;
  for (int n : nodes_) s *= n;
  return s;
}

double Grid::spacing(int axis) const {
  return domain_.axis(axis).length() / nodes_.at(static_cast<std::size_t>(axis));
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= spacing(i);
  return v;
}

double Grid::max_spacing() const {
  double h = 0.0;
  for (int i = 0; i < dim(); ++i) h = std::max(h, spacing(i));
  return h;
}

Coord Grid::node(std::int64_t idx) const {
  const auto ij = unravel(idx);
  Coord p{0.0, 0.0};
  for (int i = 0; i < dim(); ++i)
    p[static_cast<std::size_t>(i)] =
        domain_.axis(i).lo + (ij[static_cast<std::size_t>(i)] + 0.5) * spacing(i);
  return p;
}

std::int64_t Grid::index(int i, int j) const {
  if (dim() == 1) return i;
  return static_cast<std::int64_t>(i) * nodes_[1] + j;
}

std::array<int, 2> Grid::unravel(std::int64_t idx) const {
  if (dim() == 1) return {static_cast<int>(idx), 0};
  return {static_cast<int>(idx / nodes_[1]), static_cast<int>(idx % nodes_[1])};
}

GridFunction::GridFunction(Grid grid, std::vector<double> values,
                           std::vector<Coord> singular_points)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      singular_points_(std::move(singular_points)) {
  if (static_cast<std::int64_t>(values_.size()) != grid_.size())
    throw std::invalid_argument("value count does not match grid size");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("grid function values must be finite");
}

void GridFunction::set_trust_mask(std::vector<std::uint8_t> mask) {
  if (!mask.empty() && mask.size() != values_.size())
    throw std::invalid_argument("trust mask size mismatch");
  trusted_ = std::move(mask);
}

double GridFunction::trusted_fraction() const {
  if (trusted_.empty()) return 1.0;
  return static_cast<double>(trusted_count()) / static_cast<double>(values_.size());
}

std::int64_t GridFunction::trusted_count() const {
  if (trusted_.empty()) return static_cast<std::int64_t>(values_.size());
  std::int64_t c = 0;
  for (auto t : trusted_) c += (t != 0);
  return c;
}

void GridFunction::merge_metadata(const GridFunction& other) {
  for (const auto& p : other.singular_points_) singular_points_.push_back(p);
  if (!other.trusted_.empty()) {
    if (trusted_.empty()) {
      trusted_ = other.trusted_;
    } else {
      for (std::size_t i = 0; i < trusted_.size(); ++i)
        trusted_[i] = static_cast<std::uint8_t>(trusted_[i] && other.trusted_[i]);
    }
  }
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch in + ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  merge_metadata(other);
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch in - ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  merge_metadata(other);
  return *this;
}

GridFunction& GridFunction::operator*=(const GridFunction& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch in * ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= other.values_[i];
  merge_metadata(other);
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

double integrate(const GridFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().cell_volume();
}

double integrate_trusted(const GridFunction& f) {
  if (f.all_trusted()) return integrate(f);
  double s = 0.0;
  const auto& vals = f.values();
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (f.trusted(static_cast<std::int64_t>(i))) s += vals[i];
  return s * f.grid().cell_volume();
}

namespace {

double lp_norm_impl(const GridFunction& f, double p, bool trusted_only) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  const auto& vals = f.values();
  if (p == kInfinity) {
    double m = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (trusted_only && !f.trusted(static_cast<std::int64_t>(i))) continue;
      m = std::max(m, std::abs(vals[i]));
    }
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (trusted_only && !f.trusted(static_cast<std::int64_t>(i))) continue;
    s += std::pow(std::abs(vals[i]), p);
  }
  return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

}  // namespace

double lp_norm(const GridFunction& f, double p) { return lp_norm_impl(f, p, false); }

double lp_norm_trusted(const GridFunction& f, double p) { return lp_norm_impl(f, p, true); }

double sup_distance_trusted(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("grid mismatch");
  double m = 0.0;
  for (std::int64_t i = 0; i < f.grid().size(); ++i)
    if (f.trusted(i) && g.trusted(i))
      m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

void write_csv(std::ostream& out, const GridFunction& f) {
  const int dim = f.grid().dim();
  out << (dim == 1 ? "x,value,trusted\n" : "x,y,value,trusted\n");
  char buf[96];
  for (std::int64_t i = 0; i < f.grid().size(); ++i) {
    const Coord p = f.grid().node(i);
    if (dim == 1)
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d\n", p[0], f[i], f.trusted(i) ? 1 : 0);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", p[0], p[1], f[i],
                    f.trusted(i) ? 1 : 0);
    out << buf;
  }
}

GridFunction read_csv(std::istream& in, const Grid& grid) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
  std::vector<double> values;
  std::vector<std::uint8_t> mask;
  values.reserve(static_cast<std::size_t>(grid.size()));
  const int fields = grid.dim() + 2;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (static_cast<int>(cells.size()) != fields)
      throw std::runtime_error("bad CSV row: " + line);
    values.push_back(std::stod(cells[static_cast<std::size_t>(grid.dim())]));
    mask.push_back(static_cast<std::uint8_t>(std::stoi(cells.back()) != 0));
  }
  GridFunction f(grid, std::move(values));
  if (std::find(mask.begin(), mask.end(), 0) != mask.end()) f.set_trust_mask(std::move(mask));
  return f;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("loglog_slope needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace wkp
