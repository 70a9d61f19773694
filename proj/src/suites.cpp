#include "tritcert/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "tritcert/csp.hpp"
#include "tritcert/dictator.hpp"
#include "tritcert/distributions.hpp"
#include "tritcert/error.hpp"

namespace tritcert {

namespace {

Json exact(const Rational& r) { return to_string(r); }

class Recorder {
 public:
  Recorder(std::string prefix, std::vector<CheckRecord>& out) : prefix_(std::move(prefix)), out_(out) {}

  void exact_equal(const std::string& id, const Rational& expected, const Rational& observed) {
    out_.push_back({prefix_ + id, exact(expected), exact(observed), 0.0, expected == observed});
  }
  void flag(const std::string& id, bool observed, Json expected = true) {
    out_.push_back({prefix_ + id, std::move(expected), observed, 0.0, observed});
  }
  void residual(const std::string& id, double observed, double tolerance) {
    out_.push_back({prefix_ + id, "<= " + format(tolerance), observed, tolerance, observed <= tolerance});
  }
  void slack(const std::string& id, double observed, double tolerance) {
    out_.push_back({prefix_ + id, ">= -" + format(tolerance), observed, tolerance, observed >= -tolerance});
  }

 private:
  static std::string format(double v) { return Json(v).dump(); }

  std::string prefix_;
  std::vector<CheckRecord>& out_;
};

// Worst case over random trials of one property.
struct Tally {
  double worst_residual = 0.0;
  double worst_slack = std::numeric_limits<double>::infinity();
  int failures = 0;

  void residual(double r) { worst_residual = std::max(worst_residual, r); }
  void slack(double s) { worst_slack = std::min(worst_slack, s); }
  void check(bool ok) { failures += !ok; }
};

void check_params(const SuiteOptions& o) {
  if (o.K < 1 || o.d < 1) throw ContractError("K and d must be at least 1");
  if (o.trials < 0) throw ContractError("trials must be nonnegative");
  if (!(o.tolerance >= 0.0)) throw ContractError("tolerance must be nonnegative");
  check_arity(o.K * o.d);
}

CspInstance random_fournat_instance(int vars, int constraints, std::mt19937_64& rng, bool distinct = false) {
  std::vector<Variable> vs;
  for (int i = 0; i < vars; ++i) vs.push_back({"v" + std::to_string(i), 3});
  std::vector<Constraint> cs;
  for (int c = 0; c < constraints; ++c) {
    std::array<int, 4> shifts{};
    std::vector<int> refs;
    for (int s = 0; s < 4; ++s) {
      shifts[s] = random_trit(rng);
      int v = static_cast<int>(rng() % vars);
      while (distinct && std::find(refs.begin(), refs.end(), v) != refs.end()) v = static_cast<int>(rng() % vars);
      refs.push_back(v);
    }
    cs.push_back({Predicate::four_nat(shifts), refs, make_rational(1, constraints)});
  }
  return CspInstance(std::move(vs), std::move(cs));
}

CspInstance random_2nlin_instance(int vars, int constraints, std::mt19937_64& rng) {
  std::vector<Variable> vs;
  for (int i = 0; i < vars; ++i) vs.push_back({"v" + std::to_string(i), 3});
  std::vector<Constraint> cs;
  for (int c = 0; c < constraints; ++c) {
    const int a = static_cast<int>(rng() % vars);
    const int b = static_cast<int>((a + 1 + rng() % (vars - 1)) % vars);
    cs.push_back({Predicate::two_nlin(random_trit(rng)), {a, b}, make_rational(1, constraints)});
  }
  return CspInstance(std::move(vs), std::move(cs));
}

void gadgets_suite(const SuiteOptions& o, std::mt19937_64& rng, std::vector<CheckRecord>& out) {
  Recorder rec("gadgets/", out);
  for (const auto& spec : {fournat_to_2nlin_gadget(), twonlin_to_labelcover_gadget(), fournat_to_labelcover_gadget()}) {
    const auto v = verify_gamma(spec);
    rec.exact_equal("gamma/" + spec.name, spec.gamma, v.gamma_observed);
    rec.exact_equal("gamma-max/" + spec.name, spec.gamma, v.gamma_max);
    rec.flag("completeness/" + spec.name, v.completeness);
  }
  const DecisionThresholds start(1, make_rational(2, 3));
  const auto mid = compose_thresholds(start, make_rational(3, 4));
  const auto end = compose_thresholds(mid, make_rational(1, 2));
  const auto direct = compose_thresholds(start, make_rational(7, 8));
  rec.exact_equal("thresholds/4nat-2nlin/c", 1, mid.c);
  rec.exact_equal("thresholds/4nat-2nlin/s", make_rational(11, 12), mid.s);
  rec.exact_equal("thresholds/2nlin-labelcover/c", 1, end.c);
  rec.exact_equal("thresholds/2nlin-labelcover/s", make_rational(23, 24), end.s);
  rec.exact_equal("thresholds/4nat-labelcover/s", make_rational(23, 24), direct.s);

  // Optima of a reduced instance follow opt + (1 - opt) gamma.
  const int instances = std::max(1, std::min(o.trials, 5));
  Tally fournat, twonlin;
  for (int t = 0; t < instances; ++t) {
    const auto src = random_fournat_instance(3, 4, rng);
    const Rational opt = exact_optimum(src).value;
    const Rational tgt = exact_optimum(apply_gadget_to_instance(src, fournat_to_2nlin_gadget())).value;
    fournat.check(tgt == opt + (1 - opt) * make_rational(3, 4));
    const auto src2 = random_2nlin_instance(3, 3, rng);
    const Rational opt2 = exact_optimum(src2).value;
    const Rational tgt2 = exact_optimum(apply_gadget_to_instance(src2, twonlin_to_labelcover_gadget())).value;
    twonlin.check(tgt2 == opt2 + (1 - opt2) * make_rational(1, 2));
  }
  rec.flag("instance-optimum/4nat-2nlin", fournat.failures == 0, true);
  rec.flag("instance-optimum/2nlin-labelcover", twonlin.failures == 0, true);
}

void tests_suite(const SuiteOptions& o, std::mt19937_64& rng, std::vector<CheckRecord>& out) {
  Recorder rec("tests/", out);
  const int K = o.K, d = o.d, L = K * d;
  const BlockMap blocks(K, d);
  const auto f = FunctionTable::dictator(K, 0);
  const auto g_match = FunctionTable::dictator(L, 0);
  const Rational one = 1;
  rec.exact_equal("matching/2nlin", one,
                  pass_probability_2nlin(f, g_match, best_middle_function(f, g_match, MiddleTest::TwoNLin)));
  rec.exact_equal("matching/3col", one,
                  pass_probability_3col(f, g_match, best_middle_function(f, g_match, MiddleTest::ThreeColoring)));
  rec.exact_equal("matching/4nat", one, pass_probability_4nat(f, g_match));
  rec.residual("matching/4nat-bound-equality",
               std::abs(soundness_bound_4nat(f, g_match, o.tolerance).bound_rhs - 1.0), o.tolerance);
  rec.residual("matching/3col-bound-equality",
               std::abs(soundness_bound_3col(f, g_match, o.tolerance).bound_rhs - 1.0), o.tolerance);
  if (K >= 2) {
    const auto g_non = FunctionTable::dictator(L, d);
    rec.exact_equal("nonmatching/2nlin", make_rational(11, 12),
                    pass_probability_2nlin(f, g_non, best_middle_function(f, g_non, MiddleTest::TwoNLin)));
    rec.exact_equal("nonmatching/3col", make_rational(16, 17),
                    pass_probability_3col(f, g_non, best_middle_function(f, g_non, MiddleTest::ThreeColoring)));
    rec.exact_equal("nonmatching/4nat", make_rational(2, 3), pass_probability_4nat(f, g_non));
  }

  const auto arith = arithmetization_check();
  rec.residual("arithmetization/sum-form", arith.max_residual_sum_form, kPointTolerance);
  rec.residual("arithmetization/real-form", arith.max_residual_real_form, kPointTolerance);

  // Per-column law of (x, y, y', y'').
  {
    std::map<std::array<Index, 4>, int> law;
    bool all_twopair = true;
    for_each_coupled_outcome(BlockMap(1, 1), [&](Index x, Index y, Index, Index y1, Index y2) {
      ++law[{x, y, y1, y2}];
      all_twopair = all_twopair && two_pair(x, y, y1, y2);
    });
    const bool uniform = std::all_of(law.begin(), law.end(), [](const auto& kv) { return kv.second == 1; });
    rec.flag("coupling/column-law-uniform-18", law.size() == 18 && uniform && all_twopair);
  }
  // y' and y'' have the law of y given (x, z).
  {
    std::map<std::array<Index, 3>, std::uint64_t> y_law, y1_law, y2_law;
    for_each_coupled_outcome(blocks, [&](Index x, Index y, Index z, Index y1, Index y2) {
      ++y_law[{x, z, y}];
      ++y1_law[{x, z, y1}];
      ++y2_law[{x, z, y2}];
    });
    rec.flag("coupling/y-prime-marginal", y_law == y1_law && y_law == y2_law);
  }

  // Distributional facts.
  {
    std::mt19937_64 local(o.seed);
    rec.exact_equal("random-assignment/4nat", make_rational(5, 9),
                    random_assignment_expectation(random_fournat_instance(5, 6, local, true)));
    int count = 0;
    std::array<std::array<int, 3>, 4> marginal{};
    std::array<std::array<std::array<int, 9>, 4>, 4> pairs{};
    for (int k = 0; k < 81; ++k) {
      const std::array<int, 4> a = {k % 3, k / 3 % 3, k / 9 % 3, k / 27 % 3};
      if (!two_pair(a[0], a[1], a[2], a[3])) continue;
      ++count;
      for (int i = 0; i < 4; ++i) {
        ++marginal[i][a[i]];
        for (int j = 0; j < 4; ++j) ++pairs[i][j][3 * a[i] + a[j]];
      }
    }
    bool marg = true, indep = true;
    for (int i = 0; i < 4; ++i) {
      for (int v = 0; v < 3; ++v) marg = marg && marginal[i][v] * 3 == count;
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        for (int v = 0; v < 9; ++v) indep = indep && pairs[i][j][v] * 9 == count;
      }
    }
    rec.exact_equal("twopair/count", 18, count);
    rec.flag("twopair/uniform-marginals", marg);
    rec.flag("twopair/pairwise-independent", indep);
  }

  if (o.trials == 0) return;
  Tally coupled, hidden, bound4, bound3, chain4, chain3;
  for (int t = 0; t < o.trials; ++t) {
    const auto ff = random_folded_table(K, rng);
    const auto gf = random_folded_table(L, rng);
    coupled.check(coupled_4nat_expectation(ff, gf) == pass_probability_4nat(ff, gf));
    const auto h = random_table(L, rng);
    hidden.check(hidden_gadget_inequality(ff, gf, h).holds);
    hidden.check(hidden_gadget_inequality(ff, gf, best_middle_function(ff, gf, MiddleTest::TwoNLin)).holds);
    const auto r4 = soundness_bound_4nat(ff, gf, o.tolerance);
    bound4.slack(r4.bound_rhs - to_double(r4.pass_probability));
    chain4.check(r4.all_hold());
    const auto fu = random_table(K, rng);
    const auto gu = random_table(L, rng);
    const auto r3 = soundness_bound_3col(fu, gu, o.tolerance);
    bound3.slack(r3.bound_rhs - to_double(r3.pass_probability));
    chain3.check(r3.all_hold());
  }
  rec.flag("random/coupled-4nat-equals-pass", coupled.failures == 0);
  rec.flag("random/hidden-gadget-inequality", hidden.failures == 0);
  rec.slack("random/4nat-soundness-slack", bound4.worst_slack, o.tolerance);
  rec.slack("random/3col-soundness-slack", bound3.worst_slack, o.tolerance);
  rec.flag("random/4nat-intermediates", chain4.failures == 0);
  rec.flag("random/3col-intermediates", chain3.failures == 0);
}

ComplexTable random_complex_table(int n, std::mt19937_64& rng) {
  ComplexTable t{n, std::vector<Complex>(kPow3[n])};
  for (auto& v : t.values) {
    const double re = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    const double im = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    v = {re, im};
  }
  return t;
}

void fourier_suite(const SuiteOptions& o, std::mt19937_64& rng, std::vector<CheckRecord>& out) {
  if (o.trials == 0) return;
  Recorder rec("fourier/", out);
  const int K = o.K, L = K * o.d;
  const BlockMap blocks(K, o.d);
  Tally parseval, support, roundtrip, triple, triple_general, pair, efgg, fg, gg, fgg, empty, folding, expansion;
  for (int t = 0; t < o.trials; ++t) {
    const auto f = random_table(K, rng);
    const auto g = random_table(L, rng);
    const auto ff = random_folded_table(K, rng);
    const auto gf = random_folded_table(L, rng);
    const auto g_hat = transform(g);
    const auto gf_hat = transform(gf);
    parseval.residual(parseval_residual(g_hat));
    parseval.residual(parseval_residual(gf_hat));
    support.residual(folded_support_violation(gf_hat));
    const auto back = inverse_transform(g_hat);
    const auto unit = as_unit_roots(g);
    for (Index x = 0; x < unit.values.size(); ++x) roundtrip.residual(std::abs(back.values[x] - unit.values[x]));

    triple.residual(triple_product_expansion(as_unit_roots(f), as_unit_roots(g), as_unit_roots(g), blocks).residual);
    triple_general.residual(triple_product_expansion(random_complex_table(K, rng), random_complex_table(L, rng),
                                                     random_complex_table(L, rng), blocks)
                                .residual);
    pair.residual(pair_correlation_expansion(as_unit_roots(g), blocks).residual);
    efgg.slack(efgg_bound_check(f, g).slack());
    fg.slack(fg_empty_coefficient_bound(f, g).slack());
    gg.slack(gg_even_bound(g, blocks).slack());
    fgg.slack(fgg_even_bound(f, g).slack());
    empty.slack(empty_within_even(g_hat).slack());
    folding.residual(folding_test_probability(g).residual);
    folding.residual(folding_test_probability(f).residual);
    expansion.residual(std::abs(to_double(pass_probability_4nat(ff, gf)) - fournat_spectral_expansion(ff, gf)));
  }
  rec.residual("parseval", parseval.worst_residual, o.tolerance);
  rec.residual("folded-support", support.worst_residual, o.tolerance);
  rec.residual("inverse-roundtrip", roundtrip.worst_residual, o.tolerance);
  rec.residual("triple-product-expansion", triple.worst_residual, o.tolerance);
  rec.residual("triple-product-expansion/complex", triple_general.worst_residual, o.tolerance);
  rec.residual("pair-correlation-expansion", pair.worst_residual, o.tolerance);
  rec.slack("efgg-dec-bound", efgg.worst_slack, o.tolerance);
  rec.slack("fg-empty-coefficient-bound", fg.worst_slack, o.tolerance);
  rec.slack("gg-even-bound", gg.worst_slack, o.tolerance);
  rec.slack("fgg-even-bound", fgg.worst_slack, o.tolerance);
  rec.slack("empty-within-even", empty.worst_slack, o.tolerance);
  rec.residual("folding-test-identity", folding.worst_residual, o.tolerance);
  rec.residual("4nat-spectral-expansion", expansion.worst_residual, o.tolerance);
}

void record_ggg(Recorder& rec, const std::string& id, const GggReport& r, double tolerance) {
  rec.residual(id + "/psi-phi-expansion", r.expansion.residual, tolerance);
  rec.residual(id + "/empty-coefficient-frequencies", r.frequency_residual, tolerance);
  rec.residual(id + "/three-ones", r.three_ones.residual, tolerance);
  rec.slack(id + "/ggg-bound", r.bound.slack(), tolerance);
}

void appendix_suite(const SuiteOptions& o, std::mt19937_64& rng, std::vector<CheckRecord>& out) {
  Recorder rec("appendix/", out);
  const int L = o.K * o.d;
  const BlockMap blocks(o.K, o.d);
  double worst = 0.0;
  for (Trit b = 0; b < 3; ++b) {
    for (Trit c = 0; c < 3; ++c) {
      for (Trit a = 0; a < 3; ++a) {
        worst = std::max(worst, std::abs(character_block_expectation(b, c, a) - character_block_closed_form(b, c, a)));
      }
    }
  }
  rec.residual("character-block-table", worst, kPointTolerance);

  for (Trit c = 0; c < 3; ++c) {
    const auto g = FunctionTable::constant(L, c);
    record_ggg(rec, "constant-" + std::to_string(c), ggg_expansion_and_bound(g, blocks), o.tolerance);
    const auto fold = folding_test_probability(g);
    rec.exact_equal("constant-" + std::to_string(c) + "/folding-pass", 0, fold.probability);
    rec.residual("constant-" + std::to_string(c) + "/even-is-one", std::abs(fold.even - 1.0), o.tolerance);
  }
  for (int j = 0; j < L; ++j) {
    const auto g = FunctionTable::dictator(L, j);
    record_ggg(rec, "dictator-" + std::to_string(j), ggg_expansion_and_bound(g, blocks), o.tolerance);
    const auto fold = folding_test_probability(g);
    rec.exact_equal("dictator-" + std::to_string(j) + "/folding-pass", 1, fold.probability);
    rec.residual("dictator-" + std::to_string(j) + "/even-is-zero", fold.even, o.tolerance);
  }

  if (o.trials == 0) return;
  Tally expansion, freq, three, bound, folded_three, folded_bound;
  for (int t = 0; t < o.trials; ++t) {
    const auto r = ggg_expansion_and_bound(random_table(L, rng), blocks);
    expansion.residual(r.expansion.residual);
    freq.residual(r.frequency_residual);
    three.residual(r.three_ones.residual);
    bound.slack(r.bound.slack());
    const auto rf = ggg_expansion_and_bound(random_folded_table(L, rng), blocks);
    expansion.residual(rf.expansion.residual);
    folded_three.residual(rf.three_ones.residual);
    folded_bound.slack(rf.bound.slack());
  }
  rec.residual("random/psi-phi-expansion", expansion.worst_residual, o.tolerance);
  rec.residual("random/empty-coefficient-frequencies", freq.worst_residual, o.tolerance);
  rec.residual("random/three-ones", three.worst_residual, o.tolerance);
  rec.slack("random/ggg-bound", bound.worst_slack, o.tolerance);
  rec.residual("random-folded/three-ones", folded_three.worst_residual, o.tolerance);
  rec.slack("random-folded/ggg-bound", folded_bound.worst_slack, o.tolerance);
}

void pipeline_suite(const SuiteOptions& o, std::mt19937_64& rng, std::vector<CheckRecord>& out) {
  Recorder rec("pipeline/", out);
  if (o.K * o.d > kMaxLongCodeArity) {
    throw CapacityError("pipeline suite needs dK <= " + std::to_string(kMaxLongCodeArity));
  }
  const auto planted = planted_label_cover(o.K, o.d, rng);
  const auto& lc = planted.instance;
  rec.exact_equal("planted-labeling-value", 1, labeling_value(lc, planted.labeling));
  const auto inst = build_4nat_instance(lc);
  const std::uint64_t orbit_vars = 2 * (kPow3[o.K - 1] + kPow3[o.K * o.d - 1]);
  rec.exact_equal("orbit-variables", Rational(BigInt(orbit_vars)), inst.csp.num_variables());
  const auto tables = dictator_assignment(lc, planted.labeling);
  rec.exact_equal("completeness", 1, instance_value(inst.csp, inst.assignment_for(tables)));
  rec.exact_equal("per-edge-identity/dictators", per_edge_4nat_value(lc, tables),
                  instance_value(inst.csp, inst.assignment_for(tables)));
  bool point_masses = true;
  Labeling decoded;
  for (const auto& f : tables.f) {
    const auto p = decode_spectrum(transform(f));
    const auto it = std::max_element(p.begin(), p.end());
    point_masses = point_masses && std::abs(*it - 1.0) <= o.tolerance;
    decoded.left.push_back(static_cast<int>(it - p.begin()));
  }
  for (const auto& g : tables.g) {
    const auto p = decode_spectrum(transform(g));
    const auto it = std::max_element(p.begin(), p.end());
    point_masses = point_masses && std::abs(*it - 1.0) <= o.tolerance;
    decoded.right.push_back(static_cast<int>(it - p.begin()));
  }
  rec.flag("decode/point-masses", point_masses);
  rec.exact_equal("decode/recovered-labeling-value", 1, labeling_value(lc, decoded));
  rec.residual("decode/expected-value-one", std::abs(expected_decoded_value(lc, tables) - 1.0), o.tolerance);
  {
    const auto& e = lc.edges()[0];
    const auto good = good_alpha_filter(transform(tables.f[e.u]), transform(reorder_for_edge(tables.g[e.v], e, o.d)),
                                        0.5, lc.blocks());
    rec.flag("good-alpha/matching-dictators-nonempty", !good.members.empty() && good.consequences_hold());
  }

  if (o.trials == 0) return;
  Tally identity, distribution, members, decoding, range;
  for (int t = 0; t < o.trials; ++t) {
    LongCodeAssignment random_tables;
    for (std::size_t u = 0; u < lc.left().size(); ++u) random_tables.f.push_back(random_folded_table(o.K, rng));
    for (std::size_t v = 0; v < lc.right().size(); ++v) {
      random_tables.g.push_back(random_folded_table(o.K * o.d, rng));
    }
    identity.check(instance_value(inst.csp, inst.assignment_for(random_tables)) ==
                   per_edge_4nat_value(lc, random_tables));
    for (const auto& g : random_tables.g) {
      const auto p = decode_spectrum(transform(g));
      distribution.residual(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0));
    }
    const double value = expected_decoded_value(lc, random_tables);
    range.check(value >= -o.tolerance && value <= 1.0 + o.tolerance);
    for (const auto& e : lc.edges()) {
      const auto f = random_tables.f[e.u];
      const auto g = reorder_for_edge(random_tables.g[e.v], e, o.d);
      for (double eps : {0.05, 0.2, 0.5}) {
        members.check(good_alpha_filter(transform(f), transform(g), eps, lc.blocks()).consequences_hold());
        decoding.check(edge_decoding_check(f, g, eps, o.tolerance).holds());
      }
    }
  }
  rec.flag("random/per-edge-identity", identity.failures == 0);
  rec.residual("random/decoded-distribution-sums-to-one", distribution.worst_residual, o.tolerance);
  rec.flag("random/expected-decoded-value-in-range", range.failures == 0);
  rec.flag("random/good-alpha-consequences", members.failures == 0);
  rec.flag("random/edge-decoding-chain", decoding.failures == 0);
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

Json SuiteReport::to_json() const {
  Json recs = Json::array();
  std::size_t failed = 0;
  for (const auto& r : records) {
    recs.push_back(
        {{"id", r.id}, {"expected", r.expected}, {"observed", r.observed}, {"tolerance", r.tolerance}, {"pass", r.pass}});
    failed += !r.pass;
  }
  return {{"suite", suite},
          {"parameters",
           {{"K", options.K},
            {"d", options.d},
            {"trials", options.trials},
            {"seed", options.seed},
            {"tolerance", options.tolerance}}},
          {"records", recs},
          {"summary", {{"records", records.size()}, {"failed", failed}}},
          {"pass", pass()}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"gadgets", "tests", "fourier", "appendix", "pipeline", "all"};
  return names;
}

SuiteReport run_suite(const SuiteOptions& options) {
  check_params(options);
  SuiteReport report{options.suite, options, {}};
  std::mt19937_64 rng(options.seed);
  const auto& s = options.suite;
  const bool all = s == "all";
  if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
    throw ContractError("unknown suite '" + s + "'");
  }
  if (all || s == "gadgets") gadgets_suite(options, rng, report.records);
  if (all || s == "tests") tests_suite(options, rng, report.records);
  if (all || s == "fourier") fourier_suite(options, rng, report.records);
  if (all || s == "appendix") appendix_suite(options, rng, report.records);
  if (all || s == "pipeline") pipeline_suite(options, rng, report.records);
  return report;
}

PlantedLabelCover planted_label_cover(int K, int d, std::mt19937_64& rng) {
  const int L = K * d;
  Labeling labeling;
  for (int u = 0; u < 2; ++u) labeling.left.push_back(static_cast<int>(rng() % K));
  for (int v = 0; v < 2; ++v) labeling.right.push_back(static_cast<int>(rng() % L));
  std::vector<LabelCoverEdge> edges;
  for (int u = 0; u < 2; ++u) {
    for (int v = 0; v < 2; ++v) {
      std::vector<int> perm(L);
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = L - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
      std::vector<std::vector<int>> groups(K);
      for (int j = 0; j < L; ++j) groups[j / d].push_back(perm[j]);
      int holder = 0;
      for (int k = 0; k < K; ++k) {
        if (std::find(groups[k].begin(), groups[k].end(), labeling.right[v]) != groups[k].end()) holder = k;
      }
      std::swap(groups[holder], groups[labeling.left[u]]);
      edges.push_back({u, v, make_rational(1, 4), std::move(groups)});
    }
  }
  return {LabelCoverInstance(K, d, {"u0", "u1"}, {"v0", "v1"}, std::move(edges)), labeling};
}

namespace {

std::string normalize_stage(std::string name) {
  for (const std::string arrow : {"->", "→"}) {
    for (auto pos = name.find(arrow); pos != std::string::npos; pos = name.find(arrow)) name.replace(pos, arrow.size(), "-");
  }
  return name;
}

Json optimum_or_null(const CspInstance& inst, std::optional<Rational>& value) {
  try {
    value = exact_optimum(inst).value;
    return exact(*value);
  } catch (const CapacityError&) {
    value.reset();
    return nullptr;
  }
}

Json thresholds_json(const DecisionThresholds& t) { return {{"c", exact(t.c)}, {"s", exact(t.s)}}; }

}  // namespace

ReductionResult run_reduction(const Json& input, const std::vector<std::string>& chain,
                              std::optional<DecisionThresholds> thresholds) {
  if (chain.empty()) throw ContractError("empty reduction chain");
  std::vector<std::string> stages;
  for (const auto& s : chain) stages.push_back(normalize_stage(s));

  const bool labelcover_input = input.is_object() && input.contains("edges");
  Json report;
  report["chain"] = stages;
  std::size_t first_gadget = 0;
  CspInstance current;
  std::optional<Rational> current_opt;

  if (labelcover_input) {
    if (stages[0] != "longcode-4nat") throw ContractError("a label cover input must start with longcode-4nat");
    const auto lc = labelcover_from_json(input);
    Json source = {{"kind", "labelcover"}, {"optimum", nullptr}};
    try {
      source["optimum"] = exact(labelcover_optimum(lc));
    } catch (const CapacityError&) {
    }
    report["source"] = source;
    current = build_4nat_instance(lc).csp;
    Json stage = {{"stage", "longcode-4nat"},
                  {"variables", current.num_variables()},
                  {"constraints", current.constraints().size()}};
    stage["optimum"] = optimum_or_null(current, current_opt);
    if (!thresholds) thresholds = DecisionThresholds(1, make_rational(2, 3));
    report["stages"].push_back(stage);
    first_gadget = 1;
  } else {
    current = csp_from_json(input);
    Json source = {{"kind", "csp"}, {"variables", current.num_variables()}};
    source["optimum"] = optimum_or_null(current, current_opt);
    report["source"] = source;
  }
  if (thresholds) {
    report["thresholds"].push_back(
        {{"after", labelcover_input ? "longcode-4nat" : "input"}, {"value", thresholds_json(*thresholds)}});
  }

  for (std::size_t i = first_gadget; i < stages.size(); ++i) {
    GadgetSpec spec;
    if (stages[i] == "4nat-2nlin") {
      spec = fournat_to_2nlin_gadget();
    } else if (stages[i] == "2nlin-labelcover") {
      spec = twonlin_to_labelcover_gadget();
    } else if (stages[i] == "4nat-labelcover") {
      spec = fournat_to_labelcover_gadget();
    } else if (stages[i] == "longcode-4nat") {
      throw ContractError("longcode-4nat needs a label cover input and must come first");
    } else {
      throw ContractError("unknown reduction stage '" + chain[i] + "'");
    }
    const std::optional<Rational> before = current_opt;
    current = apply_gadget_to_instance(current, spec);
    Json stage = {{"stage", spec.name},
                  {"gamma", exact(spec.gamma)},
                  {"variables", current.num_variables()},
                  {"constraints", current.constraints().size()}};
    stage["optimum"] = optimum_or_null(current, current_opt);
    if (before && current_opt) {
      stage["optimum_relation_holds"] = *current_opt == *before + (1 - *before) * spec.gamma;
    }
    if (thresholds) {
      thresholds = compose_thresholds(*thresholds, spec.gamma);
      stage["thresholds"] = thresholds_json(*thresholds);
    }
    report["stages"].push_back(stage);
  }
  return {csp_to_json(current), report};
}

}  // namespace tritcert
