#include "tritcert/longcode.hpp"

#include <algorithm>
#include <cmath>

#include "tritcert/dictator.hpp"
#include "tritcert/distributions.hpp"
#include "tritcert/error.hpp"

namespace tritcert {

std::vector<int> LabelCoverEdge::projection() const {
  std::size_t n = 0;
  for (const auto& p : preimages) n += p.size();
  std::vector<int> out(n, -1);
  for (std::size_t k = 0; k < preimages.size(); ++k) {
    for (int j : preimages[k]) out.at(j) = static_cast<int>(k);
  }
  return out;
}

LabelCoverInstance::LabelCoverInstance(int K, int d, std::vector<std::string> left, std::vector<std::string> right,
                                       std::vector<LabelCoverEdge> edges)
    : K_(K), d_(d), left_(std::move(left)), right_(std::move(right)), edges_(std::move(edges)) {
  if (K_ < 1 || d_ < 1) throw ShapeError("label cover needs K >= 1 and d >= 1");
  if (edges_.empty()) throw ContractError("label cover instance has no edges");
  Rational total = 0;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    const std::string where = "edge " + std::to_string(e) + ": ";
    if (edge.u < 0 || edge.u >= static_cast<int>(left_.size())) throw ContractError(where + "left vertex out of range");
    if (edge.v < 0 || edge.v >= static_cast<int>(right_.size())) throw ContractError(where + "right vertex out of range");
    if (edge.weight < 0) throw ContractError(where + "negative weight");
    if (static_cast<int>(edge.preimages.size()) != K_) throw ContractError(where + "map must list K preimage groups");
    std::vector<int> seen(K_ * d_, 0);
    for (const auto& group : edge.preimages) {
      if (static_cast<int>(group.size()) != d_) throw ContractError(where + "map is not d-to-1");
      for (int j : group) {
        if (j < 0 || j >= K_ * d_) throw ContractError(where + "label out of range");
        if (seen[j]++) throw ContractError(where + "map is not d-to-1");
      }
    }
    total += edge.weight;
  }
  if (total != 1) throw ContractError("edge weights sum to " + to_string(total) + ", not 1");
}

Rational labeling_value(const LabelCoverInstance& lc, const Labeling& labeling) {
  if (labeling.left.size() != lc.left().size() || labeling.right.size() != lc.right().size()) {
    throw ShapeError("labeling does not cover every vertex");
  }
  Rational value = 0;
  for (const auto& e : lc.edges()) {
    const int j = labeling.right[e.v];
    if (j < 0 || j >= lc.K() * lc.d()) throw ContractError("right label out of range");
    if (e.projection()[j] == labeling.left[e.u]) value += e.weight;
  }
  return value;
}

Rational labelcover_optimum(const LabelCoverInstance& lc) {
  const int nu = static_cast<int>(lc.left().size());
  const int nv = static_cast<int>(lc.right().size());
  std::uint64_t space = 1;
  for (int i = 0; i < nu + nv; ++i) {
    space *= static_cast<std::uint64_t>(i < nu ? lc.K() : lc.K() * lc.d());
    if (space > kMaxOptimumAssignments) throw CapacityError("label cover labeling space is too large");
  }
  std::vector<std::vector<int>> proj;
  for (const auto& e : lc.edges()) proj.push_back(e.projection());
  Labeling l{std::vector<int>(nu, 0), std::vector<int>(nv, 0)};
  Rational best = 0;
  for (std::uint64_t k = 0; k < space; ++k) {
    Rational value = 0;
    for (std::size_t e = 0; e < proj.size(); ++e) {
      const auto& edge = lc.edges()[e];
      if (proj[e][l.right[edge.v]] == l.left[edge.u]) value += edge.weight;
    }
    if (value > best) best = value;
    for (int i = nu + nv - 1; i >= 0; --i) {
      int& label = i < nu ? l.left[i] : l.right[i - nu];
      if (++label < (i < nu ? lc.K() : lc.K() * lc.d())) break;
      label = 0;
    }
  }
  return best;
}

namespace {

void check_capacity(const LabelCoverInstance& lc) {
  if (lc.K() * lc.d() > kMaxLongCodeArity) {
    throw CapacityError("dK = " + std::to_string(lc.K() * lc.d()) + " exceeds " + std::to_string(kMaxLongCodeArity));
  }
}

// canonical index -> original index for one edge.
std::vector<Index> edge_permutation(const LabelCoverEdge& edge, int K, int d) {
  const int L = K * d;
  std::vector<Index> out(kPow3[L]);
  for (Index canon = 0; canon < out.size(); ++canon) {
    Index orig = 0;
    for (int k = 0; k < K; ++k) {
      for (int j = 0; j < d; ++j) orig += kPow3[edge.preimages[k][j]] * digit(canon, k * d + j);
    }
    out[canon] = orig;
  }
  return out;
}

void require_folded(const FunctionTable& t, const std::string& what) {
  if (!is_folded(t)) throw ContractError(what + " is not folded");
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

FunctionTable reorder_for_edge(const FunctionTable& g, const LabelCoverEdge& edge, int d) {
  const int K = static_cast<int>(edge.preimages.size());
  if (g.arity() != K * d) throw ShapeError("table arity does not match the edge map");
  const auto perm = edge_permutation(edge, K, d);
  std::vector<Trit> values(perm.size());
  for (Index canon = 0; canon < perm.size(); ++canon) values[canon] = g(perm[canon]);
  return FunctionTable(g.arity(), std::move(values), g.folded_flag());
}

OrbitRef orbit_of(Index x, int n) {
  const Trit c = digit(x, 0);
  return {shift_index(x, n, static_cast<Trit>((3 - c) % 3)) / 3, c};
}

Assignment LongCodeInstance::assignment_for(const LongCodeAssignment& tables) const {
  if (tables.f.size() != left_offset.size() || tables.g.size() != right_offset.size()) {
    throw ShapeError("assignment must give one table per vertex");
  }
  Assignment out(csp.num_variables(), 0);
  auto fill = [&](const FunctionTable& t, int arity, int offset, const std::string& what) {
    if (t.arity() != arity) throw ShapeError(what + " has the wrong arity");
    require_folded(t, what);
    for (Index r = 0; r < kPow3[arity - 1]; ++r) out[offset + r] = t(3 * r);
  };
  for (std::size_t u = 0; u < left_offset.size(); ++u) fill(tables.f[u], K, left_offset[u], "f_" + std::to_string(u));
  for (std::size_t v = 0; v < right_offset.size(); ++v) {
    fill(tables.g[v], K * d, right_offset[v], "g_" + std::to_string(v));
  }
  return out;
}

LongCodeInstance build_4nat_instance(const LabelCoverInstance& lc) {
  check_capacity(lc);
  const int K = lc.K(), d = lc.d(), L = K * d;
  const BlockMap blocks = lc.blocks();
  LongCodeInstance out;
  out.K = K;
  out.d = d;
  std::vector<Variable> vars;
  for (const auto& name : lc.left()) {
    out.left_offset.push_back(static_cast<int>(vars.size()));
    for (Index r = 0; r < kPow3[K - 1]; ++r) vars.push_back({"f:" + name + ":" + std::to_string(r), 3});
  }
  for (const auto& name : lc.right()) {
    out.right_offset.push_back(static_cast<int>(vars.size()));
    for (Index r = 0; r < kPow3[L - 1]; ++r) vars.push_back({"g:" + name + ":" + std::to_string(r), 3});
  }
  std::vector<Constraint> constraints;
  const Rational per_outcome = Rational(1) / Rational(BigInt(twopair_space_size(blocks)));
  for (const auto& edge : lc.edges()) {
    const auto perm = edge_permutation(edge, K, d);
    const int fo = out.left_offset[edge.u];
    const int go = out.right_offset[edge.v];
    const Rational w = edge.weight * per_outcome;
    for_each_twopair_outcome(blocks, [&](Index x, Index y, Index z, Index wv) {
      const OrbitRef a = orbit_of(x, K);
      const OrbitRef b = orbit_of(perm[y], L);
      const OrbitRef c = orbit_of(perm[z], L);
      const OrbitRef e = orbit_of(perm[wv], L);
      constraints.push_back({Predicate::four_nat({a.shift, b.shift, c.shift, e.shift}),
                             {fo + static_cast<int>(a.representative), go + static_cast<int>(b.representative),
                              go + static_cast<int>(c.representative), go + static_cast<int>(e.representative)},
                             w});
    });
  }
  out.csp = CspInstance(std::move(vars), std::move(constraints));
  return out;
}

LongCodeAssignment dictator_assignment(const LabelCoverInstance& lc, const Labeling& labeling) {
  if (labeling.left.size() != lc.left().size() || labeling.right.size() != lc.right().size()) {
    throw ShapeError("labeling does not cover every vertex");
  }
  LongCodeAssignment out;
  for (int i : labeling.left) out.f.push_back(FunctionTable::dictator(lc.K(), i));
  for (int j : labeling.right) out.g.push_back(FunctionTable::dictator(lc.K() * lc.d(), j));
  return out;
}

CompletenessCertificate completeness_certificate(const LabelCoverInstance& lc, const Labeling& labeling) {
  const LongCodeInstance inst = build_4nat_instance(lc);
  CompletenessCertificate out;
  out.value = instance_value(inst.csp, inst.assignment_for(dictator_assignment(lc, labeling)));
  out.matches_one = out.value == 1;
  return out;
}

Rational per_edge_4nat_value(const LabelCoverInstance& lc, const LongCodeAssignment& tables) {
  check_capacity(lc);
  Rational total = 0;
  for (const auto& e : lc.edges()) {
    total += e.weight * pass_probability_4nat(tables.f.at(e.u), reorder_for_edge(tables.g.at(e.v), e, lc.d()));
  }
  return total;
}

std::vector<double> decode_spectrum(const FourierSpectrum& spec) {
  if (!spec.source_is_folded) throw ContractError("decoding needs the spectrum of a folded table");
  std::vector<double> p(spec.arity, 0.0);
  for (Index alpha = 0; alpha < spec.size(); ++alpha) {
    const int support = support_count(alpha, spec.arity);
    if (support == 0) continue;
    const double share = std::norm(spec[alpha]) / support;
    for (int j = 0; j < spec.arity; ++j) {
      if (digit(alpha, j) != 0) p[j] += share;
    }
  }
  return p;
}

int sample_decoded_label(const FourierSpectrum& spec, std::mt19937_64& rng) {
  if (!spec.source_is_folded) throw ContractError("decoding needs the spectrum of a folded table");
  std::vector<double> cumulative(spec.size(), 0.0);
  double total = 0.0;
  for (Index alpha = 1; alpha < spec.size(); ++alpha) {
    total += std::norm(spec[alpha]);
    cumulative[alpha] = total;
  }
  const double target = uniform01(rng) * total;
  Index alpha = static_cast<Index>(std::upper_bound(cumulative.begin() + 1, cumulative.end(), target) - cumulative.begin());
  if (alpha >= spec.size()) alpha = static_cast<Index>(spec.size() - 1);
  std::vector<int> nonzero;
  for (int j = 0; j < spec.arity; ++j) {
    if (digit(alpha, j) != 0) nonzero.push_back(j);
  }
  return nonzero[rng() % nonzero.size()];
}

Labeling sample_labeling(const LabelCoverInstance& lc, const LongCodeAssignment& tables, std::mt19937_64& rng) {
  Labeling out;
  for (const auto& f : tables.f) out.left.push_back(sample_decoded_label(transform(f), rng));
  for (const auto& g : tables.g) out.right.push_back(sample_decoded_label(transform(g), rng));
  (void)lc;
  return out;
}

double expected_decoded_value(const LabelCoverInstance& lc, const LongCodeAssignment& tables) {
  check_capacity(lc);
  if (tables.f.size() != lc.left().size() || tables.g.size() != lc.right().size()) {
    throw ShapeError("assignment must give one table per vertex");
  }
  std::vector<std::vector<double>> pu, pv;
  for (const auto& f : tables.f) pu.push_back(decode_spectrum(transform(f)));
  for (const auto& g : tables.g) pv.push_back(decode_spectrum(transform(g)));
  double value = 0.0;
  for (const auto& e : lc.edges()) {
    const auto proj = e.projection();
    double edge = 0.0;
    for (std::size_t j = 0; j < proj.size(); ++j) edge += pv[e.v].at(j) * pu[e.u].at(proj[j]);
    value += to_double(e.weight) * edge;
  }
  return value;
}

bool GoodAlphaSet::consequences_hold() const {
  return std::all_of(members.begin(), members.end(), [](const GoodAlpha& a) {
    return a.squared_bound && a.support_bound && a.nonzero_projection;
  });
}

GoodAlphaSet good_alpha_filter(const FourierSpectrum& f_spec, const FourierSpectrum& g_spec, double eps,
                               const BlockMap& blocks) {
  if (!(eps > 0.0 && eps < 1.0)) throw ContractError("eps must lie in (0, 1)");
  if (f_spec.arity != blocks.blocks || g_spec.arity != blocks.length()) throw ShapeError("spectra do not match blocks");
  GoodAlphaSet out;
  const double threshold = 3.0 * eps / 8.0;
  const double support_cap = std::log2(8.0 / (3.0 * eps));
  for (Index alpha = 0; alpha < g_spec.size(); ++alpha) {
    const Index beta = blocks.project(alpha);
    if (beta == 0) continue;
    const int support = support_count(alpha, g_spec.arity);
    const double coefficient = std::abs(f_spec[beta]);
    if (coefficient * std::ldexp(1.0, -support) < threshold) continue;
    out.members.push_back({alpha, coefficient, support,
                           coefficient * coefficient >= 9.0 * eps * eps / 64.0 - kPointTolerance,
                           support <= support_cap + kPointTolerance, support > 0});
  }
  return out;
}

double per_edge_decoding_floor(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ContractError("eps must lie in (0, 1)");
  return 27.0 * eps * eps * eps / (512.0 * std::log2(8.0 / (3.0 * eps)));
}

DecodingCheck edge_decoding_check(const FunctionTable& f, const FunctionTable& g_reordered, double eps,
                                  double tolerance) {
  const BlockMap blocks = blocks_for(f, g_reordered);
  DecodingCheck out;
  const Rational pass = pass_probability_4nat(f, g_reordered);
  out.pass_probability = to_double(pass);
  out.premise = out.pass_probability >= 2.0 / 3.0 + eps / 2.0;
  const auto f_hat = transform(f);
  const auto g_hat = transform(g_reordered);
  out.dec = dec_quantity(f_hat, g_hat, blocks);
  const GoodAlphaSet good = good_alpha_filter(f_hat, g_hat, eps, blocks);
  for (const auto& a : good.members) {
    out.good_probability += std::norm(g_hat[a.alpha]);
    out.pair_probability += a.coefficient * a.coefficient * std::norm(g_hat[a.alpha]);
  }
  const auto pf = decode_spectrum(f_hat);
  const auto pg = decode_spectrum(g_hat);
  for (int j = 0; j < blocks.length(); ++j) out.success += pg[j] * pf[blocks.block_of(j)];
  out.floor = per_edge_decoding_floor(eps);
  out.members_ok = good.consequences_hold();
  out.dec_bound = !out.premise || out.dec >= 3.0 * eps / 4.0 - tolerance;
  out.good_bound = !out.premise || out.good_probability >= 3.0 * eps / 8.0 - tolerance;
  out.pair_bound = !out.premise || out.pair_probability >= 27.0 * eps * eps * eps / 512.0 - tolerance;
  out.success_bound = !out.premise || out.success >= out.floor - tolerance;
  return out;
}

}  // namespace tritcert
