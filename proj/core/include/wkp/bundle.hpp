// Sections over the groupoid arrows, the mu-weighted convolution algebra
// with its leakage accounting, the Hilbert bundle inner product, the left
// regular representation, fundamental nets, and the convolution dynamics.
#ifndef WKP_BUNDLE_HPP
#define WKP_BUNDLE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "wkp/groupoid.hpp"

namespace wkp {

/// Real scalar field on the arrow set (units included); value 0 is "not
/// supported" -- partiality lives in the arrow set, not in the section.
struct Section {
  std::vector<double> values;
};

Section zero_section(const GroupoidTables& g);
/// 1 on units, 0 elsewhere: the unit of the convolution algebra.
Section identity_section(const GroupoidTables& g);
Section uniform_section(const GroupoidTables& g);
Section random_section(const GroupoidTables& g, std::uint64_t seed);
/// 1 on one arrow.
Section delta_section(const GroupoidTables& g, int arrow);

struct SectionLeak {
  int target, source;  // missing arrow the mass would have landed on
  double mass;
};

struct ConvolutionResult {
  Section out;
  std::vector<SectionLeak> leaks;
  double total_leakage = 0.0;
};

/// (phi * psi)(gamma) = sum over factorizations gamma = g1 o g2 of
/// phi(g1) psi(g2) mu^{t(gamma)}(g1). Factorizations whose pair composite
/// is missing from the arrow set are reported as leakage instead of being
/// dropped silently.
ConvolutionResult convolve_sections(const Section& phi, const Section& psi,
                                    const GroupoidTables& g, const HaarSystem& h);

/// phi*(gamma) = phi(gamma^{-1}); the transpose in arrow-matrix terms.
Section section_involution(const Section& phi, const GroupoidTables& g);

/// nu, the induced arrow measure m(gamma) = nu(t) mu(gamma), its inverse
/// image, the composable-pair mass, and the unit restriction m_o.
struct BundleMeasureSet {
  std::vector<double> nu;
  std::vector<double> m;          // per arrow
  std::vector<double> m_inverse;  // m(gamma^{-1})
  std::vector<double> m_o;        // per object
  double total_mass = 0.0;
  double m2_total = 0.0;
};

BundleMeasureSet bundle_measures(const GroupoidTables& g, const HaarSystem& h);

/// <phi, psi> = sum_f nu(f) <phi|_{W(f,-)}, psi|_{W(f,-)}>_f with the fibre
/// inner product weighted by mu^f (units weigh 1).
double section_inner(const Section& phi, const Section& psi, const GroupoidTables& g,
                     const HaarSystem& h);
double section_norm(const Section& phi, const GroupoidTables& g, const HaarSystem& h);

/// Left regular representation of an arrow on the pair fibres:
/// (l(gamma) phi)(g1) = phi(gamma^{-1} g1), H_{s(gamma)} -> H_{t(gamma)}.
/// On partial patterns the translation may fail to biject; the operator is
/// then refused with a certificate of unmatched arrows.
struct LeftRegularOperator {
  bool defined = false;
  std::vector<int> domain_basis;  // pair t-fibre of s(gamma)
  std::vector<int> range_basis;   // pair t-fibre of t(gamma)
  Eigen::MatrixXd matrix;         // range x domain, a permutation when defined
  std::vector<int> unmatched;     // range arrows with missing translates, or
                                  // domain arrows never hit
};

LeftRegularOperator left_regular(int arrow, const GroupoidTables& g, const HaarSystem& h);

/// Ranks of net restrictions per fibre as the net index grows.
struct NetCheckReport {
  std::vector<std::vector<int>> rank_profile;  // [object][net index]
  std::vector<int> spanning_index;             // first 1-based index of full rank, -1 never
};

NetCheckReport fundamental_net_check(const std::vector<Section>& net, const GroupoidTables& g,
                                     const HaarSystem& h);

/// One delta section per arrow, fibre by fibre (units last inside each fibre).
std::vector<Section> delta_net(const GroupoidTables& g);
/// e_tau = (1 - 2^-tau) e + 2^-tau uniform, tau = 1..length.
std::vector<Section> blend_net(const GroupoidTables& g, int length);
/// Pairing sections phi_tau(i,j) = <(f_i)_{eps_tau}, f_j>, units by
/// self-pairing: the mollification shadow of the catalog in the algebra.
std::vector<Section> pairing_net(const GammaRelation& rel, const GroupoidTables& g,
                                 const SmoothNet& net);
/// Approximate-identity-shaped shadow: units pinned to 1, off-unit values
/// the normalized pairings <(f_i)_{eps_tau} - f_i, f_j>, decaying with eps.
std::vector<Section> approximate_identity_net(const GammaRelation& rel,
                                              const GroupoidTables& g, const SmoothNet& net);

struct DynamicsRow {
  int tau;  // 1-based net index
  double deviation;
};

/// ||phi_tau * psi - psi|| along the net: the convolution dynamics of the
/// partial algebra, converging when the net has approximate-identity shape.
std::vector<DynamicsRow> dynamics_demo(const std::vector<Section>& net, const Section& psi,
                                       const GroupoidTables& g, const HaarSystem& h);

}  // namespace wkp

#endif
