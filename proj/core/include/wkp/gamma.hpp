// The compatibility relation Gamma = {(f,g) : f.g in L^p} on finite catalogs,
// multiplier sets, the reciprocal involution with its partiality gate, and
// the ideal property of the multiplier sets.
#ifndef WKP_GAMMA_HPP
#define WKP_GAMMA_HPP

#include <optional>
#include <string>
#include <vector>

#include "wkp/grid.hpp"
#include "wkp/symbolic.hpp"

namespace wkp {

struct CatalogEntry {
  std::string name;
  SymbolicFunction fn;
  GridFunction sampled;
};

/// Named finite stand-in for L^p(Omega): every entry must itself be an
/// L^p member (analytic k=0 verdict), names unique.
class Catalog {
 public:
  Catalog(Grid grid, double p, int k);

  void add(const std::string& name, const SymbolicFunction& f);
  int size() const { return static_cast<int>(entries_.size()); }
  const CatalogEntry& entry(int i) const { return entries_.at(static_cast<std::size_t>(i)); }
  int find(const std::string& name) const;  // -1 when absent
  const Grid& grid() const { return grid_; }
  double p() const { return p_; }
  int k() const { return k_; }

 private:
  Grid grid_;
  double p_;
  int k_;
  std::vector<CatalogEntry> entries_;
};

enum class Verdict { in, out, marginal };
char verdict_letter(Verdict v);

/// Membership of the pointwise product f_i . f_j in W^{k,p}: power
/// exponents fold at shared centers, jumps persist, bump supports cut.
Verdict product_verdict(const Catalog& c, int i, int j, int k);

/// (f_i, f_j) in Gamma, i.e. the k = 0 product verdict.
Verdict gamma_member(const Catalog& c, int i, int j);

/// Numeric route: norm growth of the sampled nodewise product across a
/// refinement ladder (k = 0 only).
Verdict gamma_member_numeric(const Catalog& c, int i, int j, const std::vector<Grid>& ladder);

/// Full membership matrix at the catalog's k; symmetric by commutativity.
class GammaRelation {
 public:
  explicit GammaRelation(Catalog catalog);

  const Catalog& catalog() const { return catalog_; }
  Verdict at(int i, int j) const {
    return cells_.at(static_cast<std::size_t>(i * catalog_.size() + j));
  }
  bool is_in(int i, int j) const { return at(i, j) == Verdict::in; }
  int size() const { return catalog_.size(); }

 private:
  Catalog catalog_;
  std::vector<Verdict> cells_;
};

GammaRelation build_gamma(Catalog c);

struct MultiplierReport {
  std::vector<std::vector<int>> left;   // left[j]  = { i : (f_i, f_j) in Gamma }
  std::vector<std::vector<int>> right;  // right[i] = { j : (f_i, f_j) in Gamma }
  std::vector<int> universal;           // both-sided multipliers of every entry
  bool commutative = true;              // left and right sets coincide
};

MultiplierReport multipliers(const GammaRelation& rel);

/// Reciprocal involution f*(x) = 1/f(x), defined only when the discrete
/// essential infimum of |f| stays above eta; the gate is what makes the
/// involution partial on L^p.
GridFunction involution(const GridFunction& f, double eta = 1e-6);

/// max nodewise |(f.g)* - g*.f*|; zero up to round-off wherever defined.
double star_antihom_check(const GridFunction& f, const GridFunction& g, double eta = 1e-6);

struct IdealViolation {
  int multiplier, factor, against;  // (m.f, g) fell out of Gamma though (f,g) was in
};

struct IdealReport {
  int products_checked = 0;
  int gains = 0;  // cells that moved out -> in (mollifier products improve)
  std::vector<IdealViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Multiplier sets are ideals: products of a universal multiplier with a
/// compatible entry keep every compatibility the entry had.
IdealReport ideal_check(const GammaRelation& rel);

}  // namespace wkp

#endif
