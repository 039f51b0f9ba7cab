#include "wkp/gamma.hpp"

#include <algorithm>
#include <cmath>

namespace wkp {

Catalog::Catalog(Grid grid, double p, int k) : grid_(std::move(grid)), p_(p), k_(k) {
  if (!(p >= 1.0)) throw std::invalid_argument("catalog p must be >= 1");
  if (k < 0 || k > 3) throw std::invalid_argument("catalog k must be in [0,3]");
}

void Catalog::add(const std::string& name, const SymbolicFunction& f) {
  if (find(name) >= 0) throw std::invalid_argument("duplicate catalog name: " + name);
  if (membership_of_profile(profile_of(f, grid_.dim()), 0, p_) == Membership::non_member)
    throw std::invalid_argument("catalog entry is not an L^p member: " + name);
  entries_.push_back({name, f, sample(f, grid_)});
}

int Catalog::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (entries_[static_cast<std::size_t>(i)].name == name) return i;
  return -1;
}

char verdict_letter(Verdict v) {
  switch (v) {
    case Verdict::in: return 'I';
    case Verdict::out: return 'O';
    case Verdict::marginal: return 'M';
  }
  return '?';
}

namespace {

Verdict from_membership(Membership m) {
  switch (m) {
    case Membership::member: return Verdict::in;
    case Membership::non_member: return Verdict::out;
    case Membership::marginal: return Verdict::marginal;
  }
  return Verdict::marginal;
}

}  // namespace

Verdict product_verdict(const Catalog& c, int i, int j, int k) {
  const int dim = c.grid().dim();
  const FunctionProfile pi = profile_of(c.entry(i).fn, dim);
  const FunctionProfile pj = profile_of(c.entry(j).fn, dim);
  return from_membership(membership_of_profile(product_profile(pi, pj), k, c.p()));
}

Verdict gamma_member(const Catalog& c, int i, int j) { return product_verdict(c, i, j, 0); }

Verdict gamma_member_numeric(const Catalog& c, int i, int j,
                             const std::vector<Grid>& ladder) {
  const SymbolicFunction fi = c.entry(i).fn, fj = c.entry(j).fn;
  const GrowthReport rep = norm_growth(
      [&](const Grid& g) { return sample(fi, g) * sample(fj, g); }, c.p(), ladder);
  switch (rep.verdict) {
    case Growth::integrable: return Verdict::in;
    case Growth::divergent: return Verdict::out;
    case Growth::marginal: return Verdict::marginal;
  }
  return Verdict::marginal;
}

GammaRelation::GammaRelation(Catalog catalog) : catalog_(std::move(catalog)) {
  const int n = catalog_.size();
  cells_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cells_[static_cast<std::size_t>(i * n + j)] =
          product_verdict(catalog_, i, j, catalog_.k());
}

GammaRelation build_gamma(Catalog c) { return GammaRelation(std::move(c)); }

MultiplierReport multipliers(const GammaRelation& rel) {
  const int n = rel.size();
  MultiplierReport rep;
  rep.left.resize(static_cast<std::size_t>(n));
  rep.right.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (rel.is_in(i, j)) rep.left[static_cast<std::size_t>(j)].push_back(i);
      if (rel.is_in(j, i)) rep.right[static_cast<std::size_t>(j)].push_back(i);
    }
  for (int m = 0; m < n; ++m) {
    if (rep.left[static_cast<std::size_t>(m)] != rep.right[static_cast<std::size_t>(m)])
      rep.commutative = false;
    bool universal = true;
    for (int g = 0; g < n && universal; ++g)
      universal = rel.is_in(m, g) && rel.is_in(g, m);
    if (universal) rep.universal.push_back(m);
  }
  return rep;
}

GridFunction involution(const GridFunction& f, double eta) {
  double inf = kInfinity;
  for (double v : f.values()) inf = std::min(inf, std::abs(v));
  if (!(inf >= eta))
    throw std::domain_error("involution undefined: essential infimum below eta");
  std::vector<double> values(f.values().size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = 1.0 / f.values()[i];
  GridFunction out(f.grid(), std::move(values));
  out.set_trust_mask(f.trust_mask());
  return out;
}

double star_antihom_check(const GridFunction& f, const GridFunction& g, double eta) {
  const GridFunction fstar = involution(f, eta);
  const GridFunction gstar = involution(g, eta);
  const GridFunction lhs = involution(f * g, eta * eta);
  const GridFunction rhs = gstar * fstar;
  double worst = 0.0;
  for (std::int64_t i = 0; i < f.grid().size(); ++i)
    worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
  return worst;
}

IdealReport ideal_check(const GammaRelation& rel) {
  const Catalog& c = rel.catalog();
  const int dim = c.grid().dim();
  const MultiplierReport mult = multipliers(rel);
  IdealReport rep;
  for (int m : mult.universal) {
    const FunctionProfile pm = profile_of(c.entry(m).fn, dim);
    for (int f = 0; f < c.size(); ++f) {
      if (!rel.is_in(m, f)) continue;
      const FunctionProfile pmf = product_profile(pm, profile_of(c.entry(f).fn, dim));
      for (int g = 0; g < c.size(); ++g) {
        const Verdict before = rel.at(f, g);
        const Verdict after = from_membership(membership_of_profile(
            product_profile(pmf, profile_of(c.entry(g).fn, dim)), c.k(), c.p()));
        ++rep.products_checked;
        if (before == Verdict::in && after == Verdict::out)
          rep.violations.push_back({m, f, g});
        if (before == Verdict::out && after == Verdict::in) ++rep.gains;
      }
    }
  }
  return rep;
}

}  // namespace wkp
