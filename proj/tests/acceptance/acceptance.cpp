// Acceptance gate: one PASS/FAIL line per criterion. Exit status is 0 only
// when every criterion passes.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "tritcert/dictator.hpp"
#include "tritcert/distributions.hpp"
#include "tritcert/fourier.hpp"
#include "tritcert/gadgets.hpp"
#include "tritcert/json_io.hpp"
#include "tritcert/longcode.hpp"
#include "tritcert/suites.hpp"

#ifndef TRITCERT_CLI
#error "TRITCERT_CLI must name the CLI executable"
#endif

using namespace tritcert;

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kPointTol = 1e-12;
constexpr int kTables = 500;
constexpr int kPairs = 1000;
constexpr int kCouplingPairs = 200;

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Collects named sub-checks; the first few failures go into the detail line.
class Ledger {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (shown_.size() < 3) shown_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }

  Verdict verdict() const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (failures_ > 0) {
      os << ", " << failures_ << " failed";
      for (const auto& s : shown_) os << "; " << s;
    }
    for (const auto& s : notes_) os << "; " << s;
    return {failures_ == 0, os.str()};
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::vector<std::string> shown_;
  std::vector<std::string> notes_;
};

std::string str(const Rational& r) { return to_string(r); }

std::vector<FunctionTable> boundary_tables(int n) {
  std::vector<FunctionTable> out;
  for (Trit c = 0; c < 3; ++c) out.push_back(FunctionTable::constant(n, c));
  for (int j = 0; j < n; ++j) out.push_back(FunctionTable::dictator(n, j));
  return out;
}

// 1
Verdict gadget_constants() {
  Ledger l;
  const std::array<std::pair<GadgetSpec, Rational>, 3> cases{{
      {fournat_to_2nlin_gadget(), make_rational(3, 4)},
      {twonlin_to_labelcover_gadget(), make_rational(1, 2)},
      {fournat_to_labelcover_gadget(), make_rational(7, 8)},
  }};
  for (const auto& [spec, gamma] : cases) {
    const auto v = verify_gamma(spec);
    l.check(spec.gamma == gamma, spec.name + " declared " + str(spec.gamma));
    l.check(v.completeness, spec.name + " completeness");
    l.check(v.gamma_observed == gamma && v.gamma_max == gamma,
            spec.name + " observed [" + str(v.gamma_observed) + ", " + str(v.gamma_max) + "]");
    l.check(v.pass, spec.name + " pass flag");
  }
  return l.verdict();
}

// 2
Verdict threshold_composition() {
  Ledger l;
  const DecisionThresholds start(1, make_rational(2, 3));
  const auto mid = compose_thresholds(start, make_rational(3, 4));
  const auto end = compose_thresholds(mid, make_rational(1, 2));
  l.check(mid.c == 1 && mid.s == make_rational(11, 12), "after 3/4: (" + str(mid.c) + ", " + str(mid.s) + ")");
  l.check(end.c == 1 && end.s == make_rational(23, 24), "after 1/2: (" + str(end.c) + ", " + str(end.s) + ")");
  // The composed gadget in one step.
  const auto direct = compose_thresholds(start, make_rational(7, 8));
  l.check(direct.c == 1 && direct.s == make_rational(23, 24), "composed 7/8: " + str(direct.s));
  return l.verdict();
}

// 3
Verdict dictator_probabilities() {
  Ledger l;
  for (int d = 1; d <= 2; ++d) {
    const int K = 2;
    const int L = K * d;
    const std::string tag = "K=2 d=" + std::to_string(d);
    const auto f = FunctionTable::dictator(K, 0);
    for (int match = 0; match < 2; ++match) {
      const auto g = FunctionTable::dictator(L, match ? 0 : d);
      const auto h2 = best_middle_function(f, g, MiddleTest::TwoNLin);
      const auto h3 = best_middle_function(f, g, MiddleTest::ThreeColoring);
      const Rational p2 = pass_probability_2nlin(f, g, h2);
      const Rational p3 = pass_probability_3col(f, g, h3);
      const Rational p4 = pass_probability_4nat(f, g);
      const Rational e2 = match ? Rational(1) : make_rational(11, 12);
      const Rational e3 = match ? Rational(1) : make_rational(16, 17);
      const Rational e4 = match ? Rational(1) : make_rational(2, 3);
      const std::string m = match ? " matching" : " nonmatching";
      l.check(p2 == e2, tag + m + " 2-NLin " + str(p2));
      l.check(p3 == e3, tag + m + " 3-Coloring " + str(p3));
      l.check(p4 == e4, tag + m + " 4NAT " + str(p4));
    }
  }
  return l.verdict();
}

// 4
Verdict arithmetization() {
  Ledger l;
  const auto r = arithmetization_check();
  l.check(r.passed(kPointTol), "library residuals " + std::to_string(r.max_residual_sum_form) + ", " +
                                   std::to_string(r.max_residual_real_form));
  double worst = 0;
  for (int a = 0; a < 81; ++a) {
    const auto t = oracle::digits(a, 4);
    const double truth = oracle::fournat(t[0], t[1], t[2], t[3]) ? 1.0 : 0.0;
    const auto forms = fournat_arithmetized({t[0], t[1], t[2], t[3]});
    worst = std::max({worst, std::abs(forms[0] - truth), std::abs(forms[1] - truth)});
  }
  l.check(worst < kPointTol, "max residual " + std::to_string(worst));
  return l.verdict();
}

// 5
Verdict character_table() {
  Ledger l;
  for (Trit beta = 0; beta < 3; ++beta) {
    for (Trit gamma = 0; gamma < 3; ++gamma) {
      for (Trit a = 0; a < 3; ++a) {
        const Complex got = character_block_expectation(beta, gamma, a);
        const Complex want =
            beta == gamma ? std::pow(-0.5, beta != 0 ? 1 : 0) * oracle::w(2 * a * beta) : Complex(0.0, 0.0);
        l.check(std::abs(got - want) < kPointTol,
                "(" + std::to_string(beta) + "," + std::to_string(gamma) + "," + std::to_string(a) + ")");
      }
    }
  }
  return l.verdict();
}

// 6
Verdict fourier_chain() {
  Ledger l;
  const BlockMap b(2, 2);
  std::mt19937_64 rng(6);
  std::vector<std::pair<FunctionTable, FunctionTable>> inputs;
  for (const auto& f : boundary_tables(2)) {
    for (const auto& g : boundary_tables(4)) inputs.emplace_back(f, g);
  }
  const std::size_t boundary = inputs.size();
  for (int t = 0; t < kTables; ++t) {
    auto f = random_table(2, rng);
    auto g = random_table(4, rng);
    inputs.emplace_back(std::move(f), std::move(g));
  }
  std::map<std::string, int> failed;
  int folded_failures = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& [f, g] = inputs[i];
    const auto F = as_unit_roots(f);
    const auto G = as_unit_roots(g);
    const std::string where = i < boundary ? "boundary" : "random";
    auto record = [&](bool ok, const std::string& name) {
      l.check(ok, name + " on " + where + " input " + std::to_string(i));
      if (!ok) ++failed[name];
    };
    record(triple_product_expansion(F, G, G, b).holds(kIdentityTol), "fgg expansion");
    record(triple_product_expansion(F, conjugate(G), G, b).holds(kIdentityTol), "f conj(g) g expansion");
    record(pair_correlation_expansion(G, b).holds(kIdentityTol), "gg expansion");
    record(efgg_bound_check(f, g).holds(kIdentityTol), "fgg Dec bound");
    const auto ggg = ggg_expansion_and_bound(g, b);
    record(ggg.expansion.holds(kIdentityTol), "psi/Phi expansion");
    record(ggg.frequency_residual < kIdentityTol, "empty-coefficient frequency identity");
    record(ggg.three_ones.holds(kIdentityTol), "three-ones identity");
    record(ggg.bound.holds(kIdentityTol), "ggg bound");
    if (!ggg.passed(kIdentityTol) && g.folded_flag()) ++folded_failures;
  }
  // Folded tables form a separate population; they are reported, not counted.
  std::mt19937_64 frng(66);
  int folded_ok = 0;
  for (int t = 0; t < kTables; ++t) {
    if (ggg_expansion_and_bound(random_folded_table(4, frng), b).passed(kIdentityTol)) ++folded_ok;
  }
  std::ostringstream os;
  os << "failing identities:";
  if (failed.empty()) os << " none";
  for (const auto& [name, n] : failed) os << " " << name << " x" << n;
  os << "; folded g: " << folded_ok << "/" << kTables << " pass the ggg chain";
  l.note(os.str());
  return l.verdict();
}

// 7
Verdict folding_probability() {
  Ledger l;
  std::mt19937_64 rng(7);
  for (int n : {2, 4}) {
    for (int t = 0; t < kTables; ++t) {
      const auto f = random_table(n, rng);
      const auto r = folding_test_probability(f);
      l.check(r.residual < kIdentityTol, "n=" + std::to_string(n) + " trial " + std::to_string(t));
      long differ = 0;
      for (Index x = 0; x < kPow3[n]; ++x) differ += f(x) != f(shift_index(x, n, 1));
      l.check(r.probability == make_rational(differ, kPow3[n]), "count mismatch");
    }
    for (Trit c = 0; c < 3; ++c) {
      l.check(folding_test_probability(FunctionTable::constant(n, c)).probability == 0, "constant");
    }
    for (int j = 0; j < n; ++j) {
      l.check(folding_test_probability(FunctionTable::dictator(n, j)).probability == 1, "dictator");
    }
  }
  return l.verdict();
}

// 8
Verdict soundness() {
  Ledger l;
  std::mt19937_64 rng(8);
  double worst4 = 1e300, worst3 = 1e300;
  for (int t = 0; t < kPairs; ++t) {
    const auto f = random_folded_table(2, rng);
    const auto g = random_folded_table(4, rng);
    const auto r = soundness_bound_4nat(f, g);
    const double slack = r.bound_rhs - to_double(r.pass_probability);
    worst4 = std::min(worst4, slack);
    l.check(slack >= -kIdentityTol, "4NAT pair " + std::to_string(t));
  }
  for (int t = 0; t < kPairs; ++t) {
    const auto f = random_table(2, rng);
    const auto g = random_table(4, rng);
    const auto r = soundness_bound_3col(f, g);
    const double slack = r.bound_rhs - to_double(r.pass_probability);
    worst3 = std::min(worst3, slack);
    l.check(slack >= -kIdentityTol, "3-Coloring pair " + std::to_string(t));
  }
  const auto f = FunctionTable::dictator(2, 1);
  const auto g = FunctionTable::dictator(4, 2);
  const auto e4 = soundness_bound_4nat(f, g);
  const auto e3 = soundness_bound_3col(f, g);
  l.check(e4.pass_probability == 1 && std::abs(e4.bound_rhs - 1.0) < kIdentityTol, "4NAT dictator equality");
  l.check(e3.pass_probability == 1 && std::abs(e3.bound_rhs - 1.0) < kIdentityTol, "3-Coloring dictator equality");
  l.note("min slack 4NAT " + std::to_string(worst4) + ", 3-Coloring " + std::to_string(worst3));
  return l.verdict();
}

// 9
Verdict coupling() {
  Ledger l;
  for (int d = 1; d <= 2; ++d) {
    const BlockMap b(2, d);
    const int L = b.length();
    // Per column: counts of (x_i, y_j, y'_j, y''_j) and, per (x, z), the
    // y_j and y'_j histograms.
    std::vector<std::map<std::array<int, 4>, long>> law(L);
    std::map<std::pair<Index, Index>, std::map<Index, long>> y_given, y1_given;
    long total = 0;
    for_each_coupled_outcome(b, [&](Index x, Index y, Index z, Index y1, Index y2) {
      ++total;
      for (int j = 0; j < L; ++j) {
        ++law[j][{digit(x, b.block_of(j)), digit(y, j), digit(y1, j), digit(y2, j)}];
      }
      // Weight of (x, y, z) in the coupled space is 2^offdiag / (3^K 3^L 2^L):
      // one row per coin vector.
      ++y_given[{x, z}][y];
      ++y1_given[{x, z}][y1];
    });
    for (int j = 0; j < L; ++j) {
      bool uniform = law[j].size() == 18;
      for (const auto& [t, n] : law[j]) {
        uniform = uniform && oracle::two_pair_tuple(t) && n * 18 == total;
      }
      l.check(uniform, "column law d=" + std::to_string(d) + " j=" + std::to_string(j));
    }
    bool marginals = y_given.size() == y1_given.size();
    for (const auto& [key, hist] : y_given) marginals = marginals && y1_given[key] == hist;
    l.check(marginals, "y' marginal given (x, z), d=" + std::to_string(d));
  }
  std::mt19937_64 rng(9);
  long strict = 0;
  for (int t = 0; t < kCouplingPairs; ++t) {
    const auto f = random_folded_table(2, rng);
    const auto g = random_folded_table(4, rng);
    l.check(coupled_4nat_expectation(f, g) == pass_probability_4nat(f, g), "coupled expectation pair " + std::to_string(t));
    for (const auto& h : {best_middle_function(f, g, MiddleTest::TwoNLin), random_folded_table(4, rng)}) {
      const auto hg = hidden_gadget_inequality(f, g, h);
      l.check(hg.holds && hg.lhs <= hg.rhs, "hidden gadget pair " + std::to_string(t));
      strict += hg.lhs < hg.rhs;
    }
  }
  // Dictators, both configurations.
  for (int g_coord : {0, 2}) {
    const auto f = FunctionTable::dictator(2, 0);
    const auto g = FunctionTable::dictator(4, g_coord);
    const auto hg = hidden_gadget_inequality(f, g, best_middle_function(f, g, MiddleTest::TwoNLin));
    l.check(hg.holds, "hidden gadget dictators");
  }
  return l.verdict();
}

// 10
Verdict distributional_facts() {
  Ledger l;
  long sat4 = 0, sat2 = 0;
  std::array<std::array<long, 3>, 4> single{};
  std::array<std::array<std::array<long, 9>, 4>, 4> pairs{};
  for (int a = 0; a < 81; ++a) {
    const auto t = oracle::digits(a, 4);
    sat4 += oracle::fournat(t[0], t[1], t[2], t[3]);
    if (!oracle::two_pair_tuple({t[0], t[1], t[2], t[3]})) continue;
    l.check(two_pair(t[0], t[1], t[2], t[3]), "library TwoPair disagrees");
    ++sat2;
    for (int i = 0; i < 4; ++i) {
      ++single[i][t[i]];
      for (int k = i + 1; k < 4; ++k) ++pairs[i][k][3 * t[i] + t[k]];
    }
  }
  l.check(sat4 * 9 == 81 * 5, "4NAT satisfying fraction " + std::to_string(sat4) + "/81");
  l.check(sat2 == 18, "TwoPair count " + std::to_string(sat2));
  for (int i = 0; i < 4; ++i) {
    for (int v = 0; v < 3; ++v) l.check(single[i][v] == 6, "marginal");
    for (int k = i + 1; k < 4; ++k) {
      for (int v = 0; v < 9; ++v) l.check(pairs[i][k][v] == 2, "pairwise");
    }
  }
  std::mt19937_64 rng(10);
  for (int t = 0; t < 20; ++t) {
    std::vector<Variable> vars;
    for (int v = 0; v < 6; ++v) vars.push_back({"v" + std::to_string(v), 3});
    std::vector<Constraint> cons;
    for (int c = 0; c < 8; ++c) {
      std::vector<int> ids{0, 1, 2, 3, 4, 5};
      std::shuffle(ids.begin(), ids.end(), rng);
      ids.resize(4);
      const std::array<int, 4> shifts{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3),
                                      static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
      cons.push_back({Predicate::four_nat(shifts), ids, make_rational(1 + static_cast<int>(rng() % 4), 1)});
    }
    Rational sum = 0;
    for (const auto& c : cons) sum += c.weight;
    for (auto& c : cons) c.weight /= sum;
    const CspInstance inst(vars, cons);
    l.check(random_assignment_expectation(inst) == make_rational(5, 9), "random assignment, instance " + std::to_string(t));
  }
  return l.verdict();
}

// 11
Verdict pipeline() {
  Ledger l;
  std::mt19937_64 rng(11);
  for (int K = 1; K <= 2; ++K) {
    const std::string tag = "K=" + std::to_string(K);
    const auto planted = planted_label_cover(K, 2, rng);
    const auto& lc = planted.instance;
    l.check(lc.left().size() == 2 && lc.right().size() == 2, tag + " shape");
    l.check(labeling_value(lc, planted.labeling) == 1, tag + " planted labeling");
    const auto inst = build_4nat_instance(lc);
    const auto tables = dictator_assignment(lc, planted.labeling);
    const Rational value = instance_value(inst.csp, inst.assignment_for(tables));
    l.check(value == 1, tag + " dictator value " + str(value));
    l.check(per_edge_4nat_value(lc, tables) == value, tag + " per-edge identity on dictators");
    Labeling decoded{std::vector<int>(lc.left().size()), std::vector<int>(lc.right().size())};
    auto point_mass = [&](const FunctionTable& t, int& label) {
      const auto p = decode_spectrum(transform(t));
      const auto top = std::max_element(p.begin(), p.end());
      label = static_cast<int>(top - p.begin());
      return std::abs(*top - 1.0) < kIdentityTol;
    };
    for (std::size_t u = 0; u < tables.f.size(); ++u) l.check(point_mass(tables.f[u], decoded.left[u]), tag + " f point mass");
    for (std::size_t v = 0; v < tables.g.size(); ++v) l.check(point_mass(tables.g[v], decoded.right[v]), tag + " g point mass");
    l.check(decoded.left == planted.labeling.left && decoded.right == planted.labeling.right, tag + " decoded labels");
    l.check(labeling_value(lc, decoded) == 1, tag + " decoded labeling value");
    for (int t = 0; t < 5; ++t) {
      LongCodeAssignment random;
      for (std::size_t u = 0; u < lc.left().size(); ++u) random.f.push_back(random_folded_table(K, rng));
      for (std::size_t v = 0; v < lc.right().size(); ++v) random.g.push_back(random_folded_table(2 * K, rng));
      l.check(instance_value(inst.csp, inst.assignment_for(random)) == per_edge_4nat_value(lc, random),
              tag + " per-edge identity on random tables");
    }
  }
  return l.verdict();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string run_capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

// 12
Verdict determinism() {
  Ledger l;
  const auto dir = std::filesystem::temp_directory_path() / ("tritcert-accept-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string cli = TRITCERT_CLI;
  auto quoted = [](const std::filesystem::path& p) { return "'" + p.string() + "'"; };

  std::array<std::string, 2> stdout_runs, file_runs;
  for (int r = 0; r < 2; ++r) {
    const auto out = dir / ("verify" + std::to_string(r) + ".json");
    stdout_runs[r] = run_capture(quoted(cli) + " verify --suite all --K 2 --d 2 --trials 5 --seed 12 --out " + quoted(out) +
                                 " 2>/dev/null");
    file_runs[r] = slurp(out);
  }
  l.check(!stdout_runs[0].empty() && stdout_runs[0] == stdout_runs[1], "verify stdout differs");
  l.check(!file_runs[0].empty() && file_runs[0] == file_runs[1], "verify report file differs");

  std::mt19937_64 rng(12);
  const auto planted = planted_label_cover(2, 2, rng);
  LongCodeAssignment tables;
  for (int u = 0; u < 2; ++u) tables.f.push_back(random_folded_table(2, rng));
  for (int v = 0; v < 2; ++v) tables.g.push_back(random_folded_table(4, rng));
  write_text_file((dir / "lc.json").string(), labelcover_to_json(planted.instance).dump());
  write_text_file((dir / "tables.json").string(), tables_to_json(tables).dump());
  std::array<std::string, 2> demo;
  for (int r = 0; r < 2; ++r) {
    demo[r] = run_capture(quoted(cli) + " demo-decode --in " + quoted(dir / "lc.json") + " --tables " +
                          quoted(dir / "tables.json") + " --seed 99 2>/dev/null");
  }
  l.check(!demo[0].empty() && demo[0] == demo[1], "demo-decode output differs");
  std::filesystem::remove_all(dir);
  return l.verdict();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"gadget constants", gadget_constants},
      {"threshold composition", threshold_composition},
      {"dictator pass probabilities", dictator_probabilities},
      {"4NAT arithmetization", arithmetization},
      {"block character table", character_table},
      {"Fourier expansion and ggg chain", fourier_chain},
      {"folding-test probability", folding_probability},
      {"soundness bounds", soundness},
      {"coupling identities", coupling},
      {"distributional facts", distributional_facts},
      {"end-to-end pipeline", pipeline},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " (" << v.detail << ")"
              << std::endl;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed in " << secs << " s" << std::endl;
  return failures == 0 ? 0 : 1;
}
