#include "wkp/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace wkp {

Section zero_section(const GroupoidTables& g) {
  return {std::vector<double>(static_cast<std::size_t>(g.arrows()), 0.0)};
}

Section identity_section(const GroupoidTables& g) {
  Section s = zero_section(g);
  for (int f = 0; f < g.objects(); ++f)
    s.values[static_cast<std::size_t>(g.unit_arrow(f))] = 1.0;
  return s;
}

Section uniform_section(const GroupoidTables& g) {
  return {std::vector<double>(static_cast<std::size_t>(g.arrows()), 1.0)};
}

Section random_section(const GroupoidTables& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Section s = zero_section(g);
  for (double& v : s.values) v = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  return s;
}

Section delta_section(const GroupoidTables& g, int arrow) {
  Section s = zero_section(g);
  s.values.at(static_cast<std::size_t>(arrow)) = 1.0;
  return s;
}

ConvolutionResult convolve_sections(const Section& phi, const Section& psi,
                                    const GroupoidTables& g, const HaarSystem& h) {
  if (phi.values.size() != static_cast<std::size_t>(g.arrows()) ||
      psi.values.size() != static_cast<std::size_t>(g.arrows()))
    throw std::invalid_argument("section size does not match the arrow set");
  ConvolutionResult res;
  res.out = zero_section(g);
  std::map<std::pair<int, int>, double> leaks;
  for (int g1 = 0; g1 < g.arrows(); ++g1) {
    const double a = phi.values[static_cast<std::size_t>(g1)];
    if (a == 0.0) continue;
    const int mid = g.source(g1);
    // g2 ranges over arrows with t(g2) = s(g1): the t-fibre of mid plus its unit.
    auto factor = [&](int g2) {
      const double b = psi.values[static_cast<std::size_t>(g2)];
      if (b == 0.0) return;
      const int c = g.compose(g1, g2);
      const double mass = a * b * h.mu(g1);
      if (c >= 0)
        res.out.values[static_cast<std::size_t>(c)] += mass;
      else
        leaks[{g.target(g1), g.source(g2)}] += mass;
    };
    for (int g2 : g.t_fibre_pairs(mid)) factor(g2);
    factor(g.unit_arrow(mid));
  }
  for (const auto& [key, mass] : leaks) {
    res.leaks.push_back({key.first, key.second, mass});
    res.total_leakage += std::abs(mass);
  }
  return res;
}

Section section_involution(const Section& phi, const GroupoidTables& g) {
  Section out = zero_section(g);
  for (int id = 0; id < g.arrows(); ++id)
    out.values[static_cast<std::size_t>(id)] =
        phi.values[static_cast<std::size_t>(g.inverse(id))];
  return out;
}

BundleMeasureSet bundle_measures(const GroupoidTables& g, const HaarSystem& h) {
  BundleMeasureSet b;
  b.nu = h.nu_all();
  b.m.resize(static_cast<std::size_t>(g.arrows()));
  b.m_inverse.resize(static_cast<std::size_t>(g.arrows()));
  for (int id = 0; id < g.arrows(); ++id)
    b.m[static_cast<std::size_t>(id)] = h.nu(g.target(id)) * h.mu(id);
  for (int id = 0; id < g.arrows(); ++id)
    b.m_inverse[static_cast<std::size_t>(id)] = b.m[static_cast<std::size_t>(g.inverse(id))];
  for (double x : b.m) b.total_mass += x;
  for (int f = 0; f < g.objects(); ++f)
    b.m_o.push_back(h.nu(f) * h.mu(g.unit_arrow(f)));
  for (int g1 = 0; g1 < g.arrows(); ++g1) {
    const int mid = g.source(g1);
    for (int g2 : g.t_fibre_pairs(mid))
      b.m2_total += b.m[static_cast<std::size_t>(g1)] * h.mu(g2);
    b.m2_total += b.m[static_cast<std::size_t>(g1)] * h.mu(g.unit_arrow(mid));
  }
  return b;
}

double section_inner(const Section& phi, const Section& psi, const GroupoidTables& g,
                     const HaarSystem& h) {
  double total = 0.0;
  for (int f = 0; f < g.objects(); ++f) {
    double fibre = 0.0;
    for (int id : g.t_fibre_pairs(f))
      fibre += phi.values[static_cast<std::size_t>(id)] *
               psi.values[static_cast<std::size_t>(id)] * h.mu(id);
    const int u = g.unit_arrow(f);
    fibre += phi.values[static_cast<std::size_t>(u)] * psi.values[static_cast<std::size_t>(u)];
    total += h.nu(f) * fibre;
  }
  return total;
}

double section_norm(const Section& phi, const GroupoidTables& g, const HaarSystem& h) {
  return std::sqrt(std::max(0.0, section_inner(phi, phi, g, h)));
}

LeftRegularOperator left_regular(int arrow, const GroupoidTables& g, const HaarSystem& h) {
  (void)h;  // weights enter the inner product, not the translation itself
  LeftRegularOperator op;
  op.domain_basis = g.t_fibre_pairs(g.source(arrow));
  op.range_basis = g.t_fibre_pairs(g.target(arrow));
  const int inv = g.inverse(arrow);
  const int R = static_cast<int>(op.range_basis.size());
  const int D = static_cast<int>(op.domain_basis.size());

  std::vector<int> translate(static_cast<std::size_t>(R), -1);
  std::vector<int> hits(static_cast<std::size_t>(D), 0);
  bool ok = (R == D);
  for (int r = 0; r < R; ++r) {
    const int image = g.compose(inv, op.range_basis[static_cast<std::size_t>(r)]);
    translate[static_cast<std::size_t>(r)] = image;
    if (image < 0) {
      ok = false;
      op.unmatched.push_back(op.range_basis[static_cast<std::size_t>(r)]);
      continue;
    }
    const auto it = std::find(op.domain_basis.begin(), op.domain_basis.end(), image);
    if (it == op.domain_basis.end()) {
      ok = false;
      op.unmatched.push_back(op.range_basis[static_cast<std::size_t>(r)]);
    } else {
      ++hits[static_cast<std::size_t>(it - op.domain_basis.begin())];
    }
  }
  for (int d = 0; d < D; ++d)
    if (hits[static_cast<std::size_t>(d)] != 1) {
      ok = false;
      const int a = op.domain_basis[static_cast<std::size_t>(d)];
      if (std::find(op.unmatched.begin(), op.unmatched.end(), a) == op.unmatched.end())
        op.unmatched.push_back(a);
    }
  op.defined = ok;
  if (!ok) return op;

  op.matrix = Eigen::MatrixXd::Zero(R, D);
  for (int r = 0; r < R; ++r) {
    const auto it = std::find(op.domain_basis.begin(), op.domain_basis.end(),
                              translate[static_cast<std::size_t>(r)]);
    op.matrix(r, static_cast<int>(it - op.domain_basis.begin())) = 1.0;
  }
  return op;
}

NetCheckReport fundamental_net_check(const std::vector<Section>& net, const GroupoidTables& g,
                                     const HaarSystem& h) {
  (void)h;
  if (net.empty()) throw std::invalid_argument("empty fundamental net");
  NetCheckReport rep;
  const int T = static_cast<int>(net.size());
  for (int f = 0; f < g.objects(); ++f) {
    const Fibre fb = fibre(g, f, true);
    const int F = static_cast<int>(fb.arrows.size());
    Eigen::MatrixXd M(T, F);
    for (int t = 0; t < T; ++t)
      for (int c = 0; c < F; ++c)
        M(t, c) = net[static_cast<std::size_t>(t)]
                      .values[static_cast<std::size_t>(fb.arrows[static_cast<std::size_t>(c)])];
    std::vector<int> profile;
    int span_at = -1;
    for (int t = 1; t <= T; ++t) {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M.topRows(t));
      const int rank = static_cast<int>(qr.rank());
      profile.push_back(rank);
      if (rank == F && span_at < 0) span_at = t;
    }
    rep.rank_profile.push_back(std::move(profile));
    rep.spanning_index.push_back(span_at);
  }
  return rep;
}

std::vector<Section> delta_net(const GroupoidTables& g) {
  std::vector<Section> net;
  for (int f = 0; f < g.objects(); ++f) {
    for (int id : g.t_fibre_pairs(f)) net.push_back(delta_section(g, id));
    net.push_back(delta_section(g, g.unit_arrow(f)));
  }
  return net;
}

std::vector<Section> blend_net(const GroupoidTables& g, int length) {
  std::vector<Section> net;
  const Section e = identity_section(g);
  const Section u = uniform_section(g);
  for (int tau = 1; tau <= length; ++tau) {
    const double w = std::pow(2.0, -tau);
    Section s = zero_section(g);
    for (std::size_t i = 0; i < s.values.size(); ++i)
      s.values[i] = (1.0 - w) * e.values[i] + w * u.values[i];
    net.push_back(std::move(s));
  }
  return net;
}

namespace {

double trusted_pairing(const GridFunction& a, const GridFunction& b) {
  double s = 0.0;
  for (std::int64_t i = 0; i < a.grid().size(); ++i)
    if (a.trusted(i) && b.trusted(i)) s += a[i] * b[i];
  return s * a.grid().cell_volume();
}

}  // namespace

std::vector<Section> pairing_net(const GammaRelation& rel, const GroupoidTables& g,
                                 const SmoothNet& net) {
  const Catalog& c = rel.catalog();
  if (c.size() != g.objects()) throw std::invalid_argument("catalog/groupoid size mismatch");
  std::vector<Section> out;
  for (double eps : net.epsilons) {
    MollifierElement phi(net.kernel, eps);
    std::vector<GridFunction> mollified;
    mollified.reserve(static_cast<std::size_t>(c.size()));
    for (int i = 0; i < c.size(); ++i) mollified.push_back(convolve(phi, c.entry(i).sampled));
    Section s = zero_section(g);
    for (int id = 0; id < g.pair_arrows(); ++id)
      s.values[static_cast<std::size_t>(id)] = trusted_pairing(
          mollified[static_cast<std::size_t>(g.target(id))], c.entry(g.source(id)).sampled);
    for (int f = 0; f < c.size(); ++f)
      s.values[static_cast<std::size_t>(g.unit_arrow(f))] =
          trusted_pairing(mollified[static_cast<std::size_t>(f)], c.entry(f).sampled);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Section> approximate_identity_net(const GammaRelation& rel,
                                              const GroupoidTables& g, const SmoothNet& net) {
  const Catalog& c = rel.catalog();
  if (c.size() != g.objects()) throw std::invalid_argument("catalog/groupoid size mismatch");
  std::vector<double> norms;
  for (int i = 0; i < c.size(); ++i)
    norms.push_back(std::max(1e-12, lp_norm(c.entry(i).sampled, 2.0)));
  std::vector<Section> out;
  for (double eps : net.epsilons) {
    MollifierElement phi(net.kernel, eps);
    std::vector<GridFunction> diffs;
    diffs.reserve(static_cast<std::size_t>(c.size()));
    for (int i = 0; i < c.size(); ++i)
      diffs.push_back(convolve(phi, c.entry(i).sampled) - c.entry(i).sampled);
    Section s = zero_section(g);
    for (int f = 0; f < c.size(); ++f)
      s.values[static_cast<std::size_t>(g.unit_arrow(f))] = 1.0;
    for (int id = 0; id < g.pair_arrows(); ++id) {
      const int i = g.target(id), j = g.source(id);
      s.values[static_cast<std::size_t>(id)] =
          trusted_pairing(diffs[static_cast<std::size_t>(i)], c.entry(j).sampled) /
          (norms[static_cast<std::size_t>(i)] * norms[static_cast<std::size_t>(j)]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<DynamicsRow> dynamics_demo(const std::vector<Section>& net, const Section& psi,
                                       const GroupoidTables& g, const HaarSystem& h) {
  std::vector<DynamicsRow> rows;
  for (std::size_t t = 0; t < net.size(); ++t) {
    const ConvolutionResult conv = convolve_sections(net[t], psi, g, h);
    Section diff = conv.out;
    for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= psi.values[i];
    rows.push_back({static_cast<int>(t) + 1, section_norm(diff, g, h)});
  }
  return rows;
}

}  // namespace wkp
