// The finite groupoid over a catalog: pair arrows gated by the Gamma
// relation plus one formal unit per object, structure maps, exhaustive
// axiom checks, fibres, local bisections, and smooth left Haar systems
// with their translation-invariance law.
#ifndef WKP_GROUPOID_HPP
#define WKP_GROUPOID_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wkp/gamma.hpp"
#include "wkp/mollifier.hpp"

namespace wkp {

struct Arrow {
  int target = 0;
  int source = 0;
  bool unit = false;
};

/// Arrows are the true cells of the membership matrix, as pairs
/// (target, source), plus formal units adjoined per object. Composition is
/// pair composition (i,j).(j,l) = (i,l), defined only when (i,l) is itself
/// an arrow; units absorb. Note (i,j).(j,i) = (i,i) when that diagonal
/// arrow exists -- the formal unit is a separate arrow.
class GroupoidTables {
 public:
  static GroupoidTables from_relation(const GammaRelation& rel);
  static GroupoidTables full(int objects);
  static GroupoidTables units_only(int objects);
  /// adjacency[i*objects + j] nonzero <=> pair arrow (i,j).
  static GroupoidTables from_pattern(int objects, const std::vector<std::uint8_t>& adjacency,
                                     std::vector<std::string> names = {});

  int objects() const { return objects_; }
  int arrows() const { return static_cast<int>(arrows_.size()); }
  int pair_arrows() const { return pair_count_; }
  const Arrow& arrow(int id) const { return arrows_.at(static_cast<std::size_t>(id)); }
  const std::string& object_name(int f) const {
    return names_.at(static_cast<std::size_t>(f));
  }

  int pair_arrow(int target, int source) const;  // -1 when absent
  int unit_arrow(int f) const { return pair_count_ + f; }
  bool has_pair(int target, int source) const { return pair_arrow(target, source) >= 0; }
  bool is_unit(int id) const { return arrow(id).unit; }
  int source(int id) const { return arrow(id).source; }
  int target(int id) const { return arrow(id).target; }
  int inverse(int id) const;
  /// Composition g1 after g2 (s(g1) must equal t(g2)); -1 when undefined.
  int compose(int g1, int g2) const;

  /// Pair arrows with the given target (t-fibre) or source (s-fibre),
  /// ordered by the other endpoint.
  std::vector<int> t_fibre_pairs(int f) const;
  std::vector<int> s_fibre_pairs(int f) const;

 private:
  int objects_ = 0;
  int pair_count_ = 0;
  std::vector<Arrow> arrows_;
  std::vector<int> pair_index_;  // objects x objects -> arrow id or -1
  std::vector<std::string> names_;
};

/// Fibre of an object including its formal unit.
struct Fibre {
  int anchor = 0;
  bool target_side = true;
  std::vector<int> arrows;
};

Fibre fibre(const GroupoidTables& g, int f, bool target_side);

struct TripleDefect {
  int g1, g2, g3;
  bool left_defined;  // which parenthesization existed
};

struct AxiomReport {
  bool unit_law = true;
  bool inverse_law = true;
  bool associativity_ok = true;  // zero both-sides-defined violations
  long composable_pairs = 0;
  long composable_triples = 0;
  long associativity_violations = 0;
  std::vector<TripleDefect> partiality_defects;
  bool ok() const { return unit_law && inverse_law && associativity_ok; }
};

/// Exhaustive finite-instance groupoid axioms. Partiality defects (triples
/// composable one way only) are reported as data, not failures: they
/// measure how far the relation is from a full algebra.
AxiomReport axiom_check(const GroupoidTables& g);

/// Replacing an entry by its mollification f_eps can only improve
/// integrability, so membership rows may gain cells but never lose them.
struct FibreActionRow {
  int entry;
  double epsilon;
  double bound;  // max |f_eps| on the grid
  int gains;
  int losses;
  bool preserved;  // no in-cell lost
};

struct FibreActionReport {
  std::vector<FibreActionRow> rows;
  bool ok() const;
};

FibreActionReport fibre_action_check(const GammaRelation& rel, const SmoothNet& net);

/// Section sigma of the source map with t o sigma a bijection of objects.
struct Bisection {
  std::vector<int> arrow_of_object;  // sigma(f), arrow id
  std::vector<int> target_map;       // (t o sigma)(f)
  int realizations = 1;              // maps sharing this target permutation
};

/// All bisections up to canonical choice: one per realized permutation of
/// the objects, units preferred at fixed points (so the unit bisection
/// represents the identity). Exhaustive; throws above 8 objects.
std::vector<Bisection> enumerate_bisections(const GroupoidTables& g, int cap = 1024);

/// sigma1 . sigma2 pointwise: sigma1(t(sigma2(f))) o sigma2(f); empty when a
/// required composite is missing.
std::vector<int> compose_bisections(const Bisection& s1, const Bisection& s2,
                                    const GroupoidTables& g);

/// Family of fibre measures mu^f on the pair part of the t-fibres, a base
/// probability nu on objects, and the discrete modular proxy. Formal units
/// always carry weight 1 (they are bookkeeping, not fibre mass).
/// Holds a reference to the tables; keep them alive.
class HaarSystem {
 public:
  static HaarSystem counting(const GroupoidTables& g);
  static HaarSystem per_object_constant(const GroupoidTables& g, std::vector<double> kappa);
  static HaarSystem custom(const GroupoidTables& g, std::vector<double> pair_weights,
                           std::vector<double> nu);

  double mu(int arrow) const;     // fibre weight; 1.0 on units
  double kappa0(int object) const;  // mu^f mass of the pair fibre
  double nu(int object) const { return nu_.at(static_cast<std::size_t>(object)); }
  const std::vector<double>& nu_all() const { return nu_; }
  double modular(int arrow) const;
  bool is_counting() const { return counting_; }

 private:
  HaarSystem(const GroupoidTables* g, std::vector<double> w, std::vector<double> nu,
             bool counting);
  const GroupoidTables* g_ = nullptr;
  std::vector<double> pair_weight_;  // per pair-arrow id
  std::vector<double> nu_;
  bool counting_ = true;
};

struct HaarReport {
  double max_defect = 0.0;
  std::vector<double> arrow_defect;  // per non-unit arrow, max over the panel
};

/// Def of a left Haar system, invariance condition: for every non-unit g1
/// and panel function F,
///   sum_{g2 in W(s(g1),-)} F(g1 g2) mu^{s(g1)}(g2)
///     = sum_{g3 in W(t(g1),-)} F(g3) mu^{t(g1)}(g3),
/// the left sum restricted to composable g2. Exact zero on full patterns
/// with counting weights; strictly positive where arrows are missing.
HaarReport haar_invariance_check(const GroupoidTables& g, const HaarSystem& h,
                                 const std::vector<std::vector<double>>& panel);

/// Seeded panel of arrow functions with values in [-1, 1].
std::vector<std::vector<double>> random_arrow_panel(const GroupoidTables& g, int size,
                                                    std::uint64_t seed);

}  // namespace wkp

#endif
