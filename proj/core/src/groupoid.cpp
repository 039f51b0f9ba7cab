#include "wkp/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace wkp {

GroupoidTables GroupoidTables::from_relation(const GammaRelation& rel) {
  const int n = rel.size();
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    names.push_back(rel.catalog().entry(i).name);
    for (int j = 0; j < n; ++j)
      adj[static_cast<std::size_t>(i * n + j)] = rel.is_in(i, j) ? 1 : 0;
  }
  return from_pattern(n, adj, std::move(names));
}

GroupoidTables GroupoidTables::full(int objects) {
  return from_pattern(objects,
                      std::vector<std::uint8_t>(
                          static_cast<std::size_t>(objects) * static_cast<std::size_t>(objects), 1));
}

GroupoidTables GroupoidTables::units_only(int objects) {
  return from_pattern(objects,
                      std::vector<std::uint8_t>(
                          static_cast<std::size_t>(objects) * static_cast<std::size_t>(objects), 0));
}

GroupoidTables GroupoidTables::from_pattern(int objects,
                                            const std::vector<std::uint8_t>& adjacency,
                                            std::vector<std::string> names) {
  if (objects < 1) throw std::invalid_argument("need at least one object");
  if (adjacency.size() != static_cast<std::size_t>(objects) * static_cast<std::size_t>(objects))
    throw std::invalid_argument("adjacency size mismatch");
  GroupoidTables g;
  g.objects_ = objects;
  g.pair_index_.assign(adjacency.size(), -1);
  for (int i = 0; i < objects; ++i)
    for (int j = 0; j < objects; ++j)
      if (adjacency[static_cast<std::size_t>(i * objects + j)]) {
        g.pair_index_[static_cast<std::size_t>(i * objects + j)] =
            static_cast<int>(g.arrows_.size());
        g.arrows_.push_back({i, j, false});
      }
  g.pair_count_ = static_cast<int>(g.arrows_.size());
  for (int f = 0; f < objects; ++f) g.arrows_.push_back({f, f, true});
  if (names.empty())
    for (int f = 0; f < objects; ++f) names.push_back("f" + std::to_string(f));
  if (static_cast<int>(names.size()) != objects)
    throw std::invalid_argument("object name count mismatch");
  g.names_ = std::move(names);
  return g;
}

int GroupoidTables::pair_arrow(int target, int source) const {
  if (target < 0 || target >= objects_ || source < 0 || source >= objects_)
    throw std::out_of_range("unknown object");
  return pair_index_[static_cast<std::size_t>(target * objects_ + source)];
}

int GroupoidTables::inverse(int id) const {
  const Arrow& a = arrow(id);
  if (a.unit) return id;
  return pair_arrow(a.source, a.target);  // symmetric relation: always present
}

int GroupoidTables::compose(int g1, int g2) const {
  const Arrow& a = arrow(g1);
  const Arrow& b = arrow(g2);
  if (a.source != b.target) return -1;
  if (a.unit) return g2;
  if (b.unit) return g1;
  return pair_arrow(a.target, b.source);
}

std::vector<int> GroupoidTables::t_fibre_pairs(int f) const {
  std::vector<int> out;
  for (int j = 0; j < objects_; ++j) {
    const int id = pair_arrow(f, j);
    if (id >= 0) out.push_back(id);
  }
  return out;
}

std::vector<int> GroupoidTables::s_fibre_pairs(int f) const {
  std::vector<int> out;
  for (int i = 0; i < objects_; ++i) {
    const int id = pair_arrow(i, f);
    if (id >= 0) out.push_back(id);
  }
  return out;
}

Fibre fibre(const GroupoidTables& g, int f, bool target_side) {
  if (f < 0 || f >= g.objects()) throw std::out_of_range("unknown object");
  Fibre out;
  out.anchor = f;
  out.target_side = target_side;
  out.arrows = target_side ? g.t_fibre_pairs(f) : g.s_fibre_pairs(f);
  out.arrows.push_back(g.unit_arrow(f));
  return out;
}

AxiomReport axiom_check(const GroupoidTables& g) {
  AxiomReport rep;
  const int A = g.arrows();
  for (int id = 0; id < A; ++id) {
    const int ut = g.unit_arrow(g.target(id));
    const int us = g.unit_arrow(g.source(id));
    if (g.compose(ut, id) != id || g.compose(id, us) != id) rep.unit_law = false;
    const int inv = g.inverse(id);
    if (g.inverse(inv) != id || g.source(inv) != g.target(id) ||
        g.target(inv) != g.source(id))
      rep.inverse_law = false;
  }
  for (int g1 = 0; g1 < A; ++g1)
    for (int g2 = 0; g2 < A; ++g2) {
      if (g.source(g1) != g.target(g2)) continue;
      ++rep.composable_pairs;
      for (int g3 = 0; g3 < A; ++g3) {
        if (g.source(g2) != g.target(g3)) continue;
        ++rep.composable_triples;
        const int m12 = g.compose(g1, g2);
        const int left = m12 < 0 ? -1 : g.compose(m12, g3);
        const int m23 = g.compose(g2, g3);
        const int right = m23 < 0 ? -1 : g.compose(g1, m23);
        if (left >= 0 && right >= 0) {
          if (left != right) {
            ++rep.associativity_violations;
            rep.associativity_ok = false;
          }
        } else if (left >= 0 || right >= 0) {
          rep.partiality_defects.push_back({g1, g2, g3, left >= 0});
        }
      }
    }
  return rep;
}

bool FibreActionReport::ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const FibreActionRow& r) { return r.losses == 0; });
}

FibreActionReport fibre_action_check(const GammaRelation& rel, const SmoothNet& net) {
  const Catalog& c = rel.catalog();
  const int dim = c.grid().dim();
  FibreActionReport rep;
  for (int e = 0; e < c.size(); ++e) {
    for (double eps : net.epsilons) {
      MollifierElement phi(net.kernel, eps);
      const GridFunction feps = convolve(phi, c.entry(e).sampled);
      double bound = 0.0;
      for (double v : feps.values()) bound = std::max(bound, std::abs(v));
      // Mollified entries are smooth and bounded, so the product verdict
      // against g reduces to g's own membership at the catalog (k, p).
      int gains = 0, losses = 0;
      for (int g = 0; g < c.size(); ++g) {
        const Verdict before = rel.at(e, g);
        const Membership m =
            membership_of_profile(profile_of(c.entry(g).fn, dim), c.k(), c.p());
        const Verdict after = m == Membership::member
                                  ? Verdict::in
                                  : (m == Membership::non_member ? Verdict::out
                                                                 : Verdict::marginal);
        if (before == Verdict::in && after == Verdict::out) ++losses;
        if (before == Verdict::out && after == Verdict::in) ++gains;
      }
      rep.rows.push_back({e, eps, bound, gains, losses, losses == 0});
    }
  }
  return rep;
}

std::vector<Bisection> enumerate_bisections(const GroupoidTables& g, int cap) {
  const int n = g.objects();
  if (n > 8)
    throw std::invalid_argument("catalog too large for exhaustive bisection enumeration");

  // Candidate arrows per object: s-fibre pairs plus the unit.
  std::vector<std::vector<int>> candidates(static_cast<std::size_t>(n));
  for (int f = 0; f < n; ++f) {
    candidates[static_cast<std::size_t>(f)] = g.s_fibre_pairs(f);
    candidates[static_cast<std::size_t>(f)].push_back(g.unit_arrow(f));
  }

  struct Canon {
    std::vector<int> arrows;
    int non_unit_fixed = 0;
    int realizations = 0;
  };
  std::map<std::vector<int>, Canon> by_permutation;

  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  std::vector<int> sigma(static_cast<std::size_t>(n)), tmap(static_cast<std::size_t>(n));
  while (true) {
    for (int f = 0; f < n; ++f) {
      sigma[static_cast<std::size_t>(f)] =
          candidates[static_cast<std::size_t>(f)][pick[static_cast<std::size_t>(f)]];
      tmap[static_cast<std::size_t>(f)] = g.target(sigma[static_cast<std::size_t>(f)]);
    }
    std::vector<bool> hit(static_cast<std::size_t>(n), false);
    bool bijective = true;
    for (int f = 0; f < n && bijective; ++f) {
      const int t = tmap[static_cast<std::size_t>(f)];
      if (hit[static_cast<std::size_t>(t)]) bijective = false;
      hit[static_cast<std::size_t>(t)] = true;
    }
    if (bijective) {
      int non_unit_fixed = 0;
      for (int f = 0; f < n; ++f)
        if (tmap[static_cast<std::size_t>(f)] == f && !g.is_unit(sigma[static_cast<std::size_t>(f)]))
          ++non_unit_fixed;
      auto [it, inserted] = by_permutation.try_emplace(tmap);
      Canon& canon = it->second;
      ++canon.realizations;
      if (inserted || non_unit_fixed < canon.non_unit_fixed) {
        canon.arrows = sigma;
        canon.non_unit_fixed = non_unit_fixed;
      }
    }
    // odometer
    int axis = 0;
    while (axis < n) {
      if (++pick[static_cast<std::size_t>(axis)] <
          candidates[static_cast<std::size_t>(axis)].size())
        break;
      pick[static_cast<std::size_t>(axis)] = 0;
      ++axis;
    }
    if (axis == n) break;
  }

  std::vector<Bisection> out;
  for (const auto& [perm, canon] : by_permutation) {
    if (static_cast<int>(out.size()) >= cap) break;
    out.push_back({canon.arrows, perm, canon.realizations});
  }
  return out;
}

std::vector<int> compose_bisections(const Bisection& s1, const Bisection& s2,
                                    const GroupoidTables& g) {
  const int n = g.objects();
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int f = 0; f < n; ++f) {
    const int a2 = s2.arrow_of_object[static_cast<std::size_t>(f)];
    const int a1 = s1.arrow_of_object[static_cast<std::size_t>(g.target(a2))];
    const int c = g.compose(a1, a2);
    if (c < 0) return {};
    out[static_cast<std::size_t>(f)] = c;
  }
  return out;
}

HaarSystem::HaarSystem(const GroupoidTables* g, std::vector<double> w, std::vector<double> nu,
                       bool counting)
    : g_(g), pair_weight_(std::move(w)), nu_(std::move(nu)), counting_(counting) {
  for (double x : pair_weight_)
    if (!(x > 0.0)) throw std::invalid_argument("Haar fibre weights must be positive");
  double total = 0.0;
  for (double x : nu_) {
    if (!(x > 0.0)) throw std::invalid_argument("nu must be strictly positive");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("nu must be a probability vector");
}

HaarSystem HaarSystem::counting(const GroupoidTables& g) {
  return HaarSystem(&g, std::vector<double>(static_cast<std::size_t>(g.pair_arrows()), 1.0),
                    std::vector<double>(static_cast<std::size_t>(g.objects()),
                                        1.0 / static_cast<double>(g.objects())),
                    true);
}

HaarSystem HaarSystem::per_object_constant(const GroupoidTables& g,
                                           std::vector<double> kappa) {
  if (static_cast<int>(kappa.size()) != g.objects())
    throw std::invalid_argument("kappa needs one value per object");
  std::vector<double> w(static_cast<std::size_t>(g.pair_arrows()));
  for (int id = 0; id < g.pair_arrows(); ++id)
    w[static_cast<std::size_t>(id)] = kappa[static_cast<std::size_t>(g.target(id))];
  return HaarSystem(&g, std::move(w),
                    std::vector<double>(static_cast<std::size_t>(g.objects()),
                                        1.0 / static_cast<double>(g.objects())),
                    false);
}

HaarSystem HaarSystem::custom(const GroupoidTables& g, std::vector<double> pair_weights,
                              std::vector<double> nu) {
  if (static_cast<int>(pair_weights.size()) != g.pair_arrows())
    throw std::invalid_argument("need one weight per pair arrow");
  if (static_cast<int>(nu.size()) != g.objects())
    throw std::invalid_argument("nu needs one value per object");
  return HaarSystem(&g, std::move(pair_weights), std::move(nu), false);
}

double HaarSystem::mu(int arrow) const {
  if (g_->is_unit(arrow)) return 1.0;
  return pair_weight_.at(static_cast<std::size_t>(arrow));
}

double HaarSystem::kappa0(int object) const {
  double s = 0.0;
  for (int id : g_->t_fibre_pairs(object)) s += mu(id);
  return s;
}

double HaarSystem::modular(int arrow) const {
  const bool uniform = std::all_of(nu_.begin(), nu_.end(), [&](double x) {
    return std::abs(x - nu_[0]) < 1e-15;
  });
  if (counting_ && uniform) return 1.0;
  const int t = g_->target(arrow), s = g_->source(arrow);
  const double num = nu(t) * kappa0(t);
  const double den = nu(s) * kappa0(s);
  if (den == 0.0) return 1.0;
  return num / den;
}

HaarReport haar_invariance_check(const GroupoidTables& g, const HaarSystem& h,
                                 const std::vector<std::vector<double>>& panel) {
  HaarReport rep;
  rep.arrow_defect.assign(static_cast<std::size_t>(g.pair_arrows()), 0.0);
  for (int g1 = 0; g1 < g.pair_arrows(); ++g1) {
    const auto left_fibre = g.t_fibre_pairs(g.source(g1));
    const auto right_fibre = g.t_fibre_pairs(g.target(g1));
    for (const auto& F : panel) {
      double lhs = 0.0;
      for (int g2 : left_fibre) {
        const int c = g.compose(g1, g2);
        if (c >= 0) lhs += F[static_cast<std::size_t>(c)] * h.mu(g2);
      }
      double rhs = 0.0;
      for (int g3 : right_fibre) rhs += F[static_cast<std::size_t>(g3)] * h.mu(g3);
      const double defect = std::abs(lhs - rhs);
      auto& cell = rep.arrow_defect[static_cast<std::size_t>(g1)];
      cell = std::max(cell, defect);
      rep.max_defect = std::max(rep.max_defect, defect);
    }
  }
  return rep;
}

std::vector<std::vector<double>> random_arrow_panel(const GroupoidTables& g, int size,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> panel;
  panel.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    std::vector<double> F(static_cast<std::size_t>(g.arrows()));
    for (double& v : F)
      v = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    panel.push_back(std::move(F));
  }
  return panel;
}

}  // namespace wkp
