// Uniform cell-centered grids on open boxes in R^n (n <= 2), sampled
// functions, midpoint quadrature and L^p norms.
#ifndef WKP_GRID_HPP
#define WKP_GRID_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace wkp {

/// Point in R^2; 1-D data uses component 0 only.
using Coord = std::array<double, 2>;

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Derivative multi-index, |alpha| <= 3 supported throughout.
struct MultiIndex {
  std::array<int, 2> a{0, 0};

  MultiIndex() = default;
  MultiIndex(int a0, int a1 = 0) : a{a0, a1} {
    if (a0 < 0 || a1 < 0) throw std::invalid_argument("multi-index components must be >= 0");
  }
  int order() const { return a[0] + a[1]; }
  bool operator==(const MultiIndex&) const = default;
};

/// All multi-indices of order <= k in dimension dim, ordered by (order, a[0] desc).
std::vector<MultiIndex> multi_indices_up_to(int k, int dim);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Open box (a_1,b_1) x ... x (a_n,b_n), n in {1,2}.
class BoxDomain {
 public:
  explicit BoxDomain(std::vector<Interval> axes);
  static BoxDomain line(double lo, double hi) { return BoxDomain({{lo, hi}}); }
  static BoxDomain box(Interval x, Interval y) { return BoxDomain({x, y}); }

  int dim() const { return static_cast<int>(axes_.size()); }
  const Interval& axis(int i) const { return axes_.at(static_cast<std::size_t>(i)); }
  double measure() const;
  bool contains(const Coord& p) const;
  /// Distance from p to the box boundary (minimum over axes).
  double boundary_distance(const Coord& p) const;
  double min_half_length() const;

  bool operator==(const BoxDomain&) const = default;

 private:
  std::vector<Interval> axes_;
};

/// Cell-centered uniform grid: nodes x_j = a_i + (j + 1/2) h_i per axis.
/// Midpoints keep quadrature away from the boundary and from singular
/// points sitting on cell edges.
class Grid {
 public:
  Grid(BoxDomain domain, std::vector<int> nodes_per_axis);

  const BoxDomain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  int nodes(int axis) const { return nodes_.at(static_cast<std::size_t>(axis)); }
  std::int64_t size() const;
  double spacing(int axis) const;
  double cell_volume() const;
  double max_spacing() const;

  Coord node(std::int64_t idx) const;
  std::int64_t index(int i, int j = 0) const;
  std::array<int, 2> unravel(std::int64_t idx) const;

  bool operator==(const Grid&) const = default;

 private:
  BoxDomain domain_;
  std::vector<int> nodes_;
};

/// Sampled real-valued function on a grid. Optional per-node trust mask
/// marks values contaminated by boundary truncation (mollification);
/// an empty mask means every node is trusted.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values,
               std::vector<Coord> singular_points = {});

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<Coord>& singular_points() const { return singular_points_; }

  bool all_trusted() const { return trusted_.empty(); }
  bool trusted(std::int64_t i) const {
    return trusted_.empty() || trusted_[static_cast<std::size_t>(i)] != 0;
  }
  void set_trust_mask(std::vector<std::uint8_t> mask);
  const std::vector<std::uint8_t>& trust_mask() const { return trusted_; }
  double trusted_fraction() const;
  std::int64_t trusted_count() const;

  /// Nodewise combinations; grids must match exactly.
  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(const GridFunction& other);
  GridFunction& operator*=(double s);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, const GridFunction& b) { return a *= b; }
  friend GridFunction operator*(double s, GridFunction a) { return a *= s; }

 private:
  void merge_metadata(const GridFunction& other);

  Grid grid_;
  std::vector<double> values_;
  std::vector<Coord> singular_points_;
  std::vector<std::uint8_t> trusted_;
};

/// Midpoint quadrature: sum of values times the cell volume.
double integrate(const GridFunction& f);
/// Same sum restricted to trusted nodes.
double integrate_trusted(const GridFunction& f);

/// ||f||_p over all nodes; p = infinity gives the discrete essential sup.
/// Throws for p < 1.
double lp_norm(const GridFunction& f, double p);
/// ||f||_p over trusted nodes only.
double lp_norm_trusted(const GridFunction& f, double p);

/// max_i |f_i - g_i| over nodes trusted in both.
double sup_distance_trusted(const GridFunction& f, const GridFunction& g);

/// CSV export/import, one row per node: coordinates then value.
void write_csv(std::ostream& out, const GridFunction& f);
GridFunction read_csv(std::istream& in, const Grid& grid);

/// Least-squares slope of log(y) against log(x); x, y > 0.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wkp

#endif
