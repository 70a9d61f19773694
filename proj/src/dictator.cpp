#include "tritcert/dictator.hpp"

#include <algorithm>
#include <cmath>

#include "tritcert/csp.hpp"
#include "tritcert/distributions.hpp"
#include "tritcert/error.hpp"

namespace tritcert {

namespace {

Rational ratio(std::uint64_t num, std::uint64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

void require_folded(const FunctionTable& t, const char* what) {
  if (!is_folded(t)) throw ContractError(std::string(what) + " must be folded");
}

BlockMap middle_blocks(const FunctionTable& f, const FunctionTable& g, const FunctionTable& h) {
  const BlockMap blocks = blocks_for(f, g);
  if (h.arity() != g.arity()) throw ShapeError("middle function must share g's arity");
  return blocks;
}

std::uint64_t folding_passes(const FunctionTable& f) {
  std::uint64_t n = 0;
  for (Index x = 0; x < f.size(); ++x) n += f(x) != f(shift_index(x, f.arity(), 1));
  return n;
}

Intermediate check(std::string name, double lhs, double rhs, double tolerance) {
  return {std::move(name), lhs, rhs, lhs <= rhs + tolerance};
}

}  // namespace

Rational OutcomeSpace::weight(std::size_t i) const { return ratio(outcomes.at(i).weight, denominator); }

Rational OutcomeSpace::total_weight() const {
  std::uint64_t s = 0;
  for (const auto& o : outcomes) s += o.weight;
  return ratio(s, denominator);
}

OutcomeSpace enumerate_2nlin_distribution(const BlockMap& blocks) {
  OutcomeSpace space{blocks, {}, nlin_denominator(blocks)};
  for_each_nlin_outcome(blocks, [&](Index x, Index y, Index z, std::uint64_t w) {
    space.outcomes.push_back({{x, y, z}, Branch::None, w});
  });
  return space;
}

OutcomeSpace enumerate_4nat_distribution(const BlockMap& blocks) {
  OutcomeSpace space{blocks, {}, twopair_space_size(blocks)};
  for_each_twopair_outcome(blocks, [&](Index x, Index y, Index z, Index w) {
    space.outcomes.push_back({{x, y, z, w}, Branch::None, 1});
  });
  return space;
}

OutcomeSpace enumerate_coupled_distribution(const BlockMap& blocks) {
  OutcomeSpace space{blocks, {}, nlin_denominator(blocks)};
  for_each_coupled_outcome(blocks, [&](Index x, Index y, Index z, Index y1, Index y2) {
    space.outcomes.push_back({{x, y, z, y1, y2}, Branch::None, 1});
  });
  return space;
}

OutcomeSpace with_2nlin_branches(const OutcomeSpace& nlin) {
  OutcomeSpace out{nlin.blocks, {}, nlin.denominator * 4};
  out.outcomes.reserve(nlin.outcomes.size() * 2);
  for (const auto& o : nlin.outcomes) {
    out.outcomes.push_back({o.strings, Branch::FirstVsMiddle, o.weight});
    out.outcomes.push_back({o.strings, Branch::SecondVsMiddle, 3 * o.weight});
  }
  return out;
}

Rational pass_probability_2nlin_unfolded(const FunctionTable& f, const FunctionTable& g, const FunctionTable& h) {
  const BlockMap blocks = middle_blocks(f, g, h);
  std::uint64_t fh = 0, gh = 0;
  for_each_nlin_outcome(blocks, [&](Index x, Index y, Index z, std::uint64_t w) {
    if (f(x) != h(z)) fh += w;
    if (g(y) != h(z)) gh += w;
  });
  return ratio(fh + 3 * gh, 4 * nlin_denominator(blocks));
}

Rational pass_probability_2nlin(const FunctionTable& f, const FunctionTable& g, const FunctionTable& h) {
  require_folded(f, "f");
  require_folded(g, "g");
  require_folded(h, "h");
  return pass_probability_2nlin_unfolded(f, g, h);
}

Rational pass_probability_3col(const FunctionTable& f, const FunctionTable& g, const FunctionTable& h) {
  middle_blocks(f, g, h);
  const Rational p_f = ratio(folding_passes(f), f.size());
  const Rational p_g = ratio(folding_passes(g), g.size());
  return make_rational(1, 17) * p_f + make_rational(4, 17) * p_g +
         make_rational(12, 17) * pass_probability_2nlin_unfolded(f, g, h);
}

Rational fournat_expectation(const FunctionTable& f, const FunctionTable& g) {
  const BlockMap blocks = blocks_for(f, g);
  std::uint64_t n = 0;
  for_each_twopair_outcome(blocks, [&](Index x, Index y, Index z, Index w) {
    n += four_nat(f(x), g(y), g(z), g(w));
  });
  return ratio(n, twopair_space_size(blocks));
}

Rational pass_probability_4nat(const FunctionTable& f, const FunctionTable& g) {
  require_folded(f, "f");
  require_folded(g, "g");
  return fournat_expectation(f, g);
}

FunctionTable best_middle_function(const FunctionTable& f, const FunctionTable& g, MiddleTest test) {
  const BlockMap blocks = blocks_for(f, g);
  const Index n = kPow3[blocks.length()];
  // Agreement mass per (z, c), scaled by 4 * denominator.
  std::vector<std::array<std::uint64_t, 3>> agree(n, {0, 0, 0});
  for_each_nlin_outcome(blocks, [&](Index x, Index y, Index z, std::uint64_t w) {
    agree[z][f(x)] += w;
    agree[z][g(y)] += 3 * w;
  });
  auto argmin = [&](Index z) {
    Trit best = 0;
    for (Trit c = 1; c < 3; ++c) {
      if (agree[z][c] < agree[z][best]) best = c;
    }
    return best;
  };
  if (test == MiddleTest::TwoNLin && is_folded(f) && is_folded(g)) {
    std::vector<Trit> reps(n / 3);
    for (Index r = 0; r < reps.size(); ++r) reps[r] = argmin(3 * r);
    return FunctionTable::fold_extend(blocks.length(), reps);
  }
  std::vector<Trit> values(n);
  for (Index z = 0; z < n; ++z) values[z] = argmin(z);
  return FunctionTable(blocks.length(), std::move(values));
}

std::array<TernaryString, 2> coupling_y_prime(const TernaryString& x, const TernaryString& y, const TernaryString& z,
                                              const BlockMap& blocks, const std::vector<bool>& coins) {
  const int L = blocks.length();
  if (x.size() != blocks.blocks || y.size() != L || z.size() != L) throw ShapeError("coupling: string lengths");
  if (static_cast<int>(coins.size()) != L) throw ShapeError("coupling: need one coin per column");
  std::vector<Trit> a(L), b(L);
  for (int j = 0; j < L; ++j) {
    const Trit xi = x[blocks.block_of(j)];
    if (z[j] == xi || z[j] == y[j]) throw ContractError("coupling: z_j must avoid x_i and y_j");
    const auto pair = split_column(xi, y[j], z[j], coins[j]);
    a[j] = pair[0];
    b[j] = pair[1];
  }
  return {TernaryString(std::move(a)), TernaryString(std::move(b))};
}

Rational coupled_4nat_expectation(const FunctionTable& f, const FunctionTable& g) {
  const BlockMap blocks = blocks_for(f, g);
  std::uint64_t n = 0;
  for_each_coupled_outcome(blocks, [&](Index x, Index y, Index, Index y1, Index y2) {
    n += four_nat(f(x), g(y), g(y1), g(y2));
  });
  return ratio(n, nlin_denominator(blocks));
}

HiddenGadget hidden_gadget_inequality(const FunctionTable& f, const FunctionTable& g, const FunctionTable& h) {
  HiddenGadget out;
  out.lhs = pass_probability_2nlin_unfolded(f, g, h);
  out.rhs = make_rational(3, 4) + make_rational(1, 4) * coupled_4nat_expectation(f, g);
  out.holds = out.lhs <= out.rhs;
  return out;
}

FoldingTest folding_test_probability(const FunctionTable& f) {
  FoldingTest out;
  out.probability = ratio(folding_passes(f), f.size());
  out.even = even_mass(transform(f));
  out.residual = std::abs(to_double(out.probability) - (1.0 - out.even));
  return out;
}

bool TestReport::all_hold() const {
  return bound_satisfied &&
         std::all_of(intermediates.begin(), intermediates.end(), [](const Intermediate& i) { return i.holds; });
}

double fournat_spectral_expansion(const FunctionTable& f, const FunctionTable& g) {
  const BlockMap blocks = blocks_for(f, g);
  const auto fu = as_unit_roots(f);
  const auto gu = as_unit_roots(g);
  const auto f_hat = transform(fu);
  const auto g_hat = transform(gu);
  const double fg = (f_hat[0] * std::conj(g_hat[0])).real();
  const double gg = pair_correlation_expansion(gu, blocks).rhs.real();
  const double fgg = triple_product_expansion(fu, gu, gu, blocks).rhs.real();
  const double ggg = ggg_expansion(gu, gu, gu, blocks).rhs.real();
  return 5.0 / 9.0 + 2.0 / 3.0 * fg + 2.0 / 3.0 * gg - 2.0 / 3.0 * fgg - 2.0 / 9.0 * ggg;
}

TestReport soundness_bound_4nat(const FunctionTable& f, const FunctionTable& g, double tolerance) {
  require_folded(f, "f");
  require_folded(g, "g");
  const BlockMap blocks = blocks_for(f, g);
  const auto fu = as_unit_roots(f);
  const auto gu = as_unit_roots(g);
  const auto f_hat = transform(fu);
  const auto g_hat = transform(gu);
  const ComplexTable one{blocks.blocks, std::vector<Complex>(kPow3[blocks.blocks], 1.0)};

  TestReport rep;
  rep.test = "4nat";
  rep.pass_probability = pass_probability_4nat(f, g);
  rep.dec = dec_quantity(f_hat, g_hat, blocks);
  rep.even_f = even_mass(f_hat);
  rep.even_g = even_mass(g_hat);
  rep.p_f = ratio(folding_passes(f), f.size());
  rep.p_g = ratio(folding_passes(g), g.size());
  rep.bound_rhs = 2.0 / 3.0 + 2.0 / 3.0 * rep.dec;
  const double pass = to_double(rep.pass_probability);
  rep.bound_satisfied = pass <= rep.bound_rhs + tolerance;

  const double fgg = expect_fgg(fu, gu, gu, blocks).real();
  const double ggg = expect_ggg(gu, gu, gu, blocks).real();
  rep.intermediates.push_back(check("|E[f(x) conj g(y)]| = 0", std::abs(f_hat[0] * std::conj(g_hat[0])), 0.0, tolerance));
  rep.intermediates.push_back(
      check("|E[g(y) conj g(z)]| = 0", std::abs(expect_fgg(one, gu, conjugate(gu), blocks)), 0.0, tolerance));
  rep.intermediates.push_back(
      check("|pass - spectral expansion|", std::abs(pass - fournat_spectral_expansion(f, g)), 0.0, tolerance));
  rep.intermediates.push_back(check("-Re E[ggg] <= 1/2", -ggg, 0.5, tolerance));
  rep.intermediates.push_back(check("pass <= 2/3 - 2/3 Re E[fgg]", pass, 2.0 / 3.0 - 2.0 / 3.0 * fgg, tolerance));
  rep.intermediates.push_back(check("-Re E[fgg] <= Dec", -fgg, rep.dec, tolerance));
  return rep;
}

TestReport soundness_bound_3col(const FunctionTable& f, const FunctionTable& g, double tolerance) {
  const BlockMap blocks = blocks_for(f, g);
  const FunctionTable h = best_middle_function(f, g, MiddleTest::ThreeColoring);
  const auto fu = as_unit_roots(f);
  const auto gu = as_unit_roots(g);
  const auto f_hat = transform(fu);
  const auto g_hat = transform(gu);
  const ComplexTable one{blocks.blocks, std::vector<Complex>(kPow3[blocks.blocks], 1.0)};

  TestReport rep;
  rep.test = "3col";
  rep.pass_probability = pass_probability_3col(f, g, h);
  rep.dec = dec_quantity(f_hat, g_hat, blocks);
  rep.even_f = even_mass(f_hat);
  rep.even_g = even_mass(g_hat);
  rep.p_f = ratio(folding_passes(f), f.size());
  rep.p_g = ratio(folding_passes(g), g.size());
  rep.bound_rhs = 16.0 / 17.0 + 2.0 / 17.0 * rep.dec;
  const double pass = to_double(rep.pass_probability);
  rep.bound_satisfied = pass <= rep.bound_rhs + tolerance;

  const double f0 = std::abs(f_hat[0]);
  const double g0 = std::abs(g_hat[0]);
  const double ef = rep.even_f, eg = rep.even_g, dec = rep.dec;
  const Rational e4 = fournat_expectation(f, g);
  const double e4d = to_double(e4);

  // Mixture bound, compared exactly.
  const Rational mixture = make_rational(1, 17) * rep.p_f + make_rational(4, 17) * rep.p_g +
                           make_rational(12, 17) * (make_rational(3, 4) + make_rational(1, 4) * e4);
  rep.intermediates.push_back({"pass <= 1/17 p_f + 4/17 p_g + 12/17 (3/4 + 1/4 E[4NAT])", pass, to_double(mixture),
                               rep.pass_probability <= mixture});

  const auto folding_f = folding_test_probability(f);
  const auto folding_g = folding_test_probability(g);
  rep.intermediates.push_back(check("|p_f - (1 - Even(f))|", folding_f.residual, 0.0, tolerance));
  rep.intermediates.push_back(check("|p_g - (1 - Even(g))|", folding_g.residual, 0.0, tolerance));

  const double fg = (f_hat[0] * std::conj(g_hat[0])).real();
  const double gg = expect_fgg(one, gu, conjugate(gu), blocks).real();
  const double fgg = expect_fgg(fu, gu, gu, blocks).real();
  const double ggg = expect_ggg(gu, gu, gu, blocks).real();
  const double expansion = 5.0 / 9.0 + 2.0 / 3.0 * fg + 2.0 / 3.0 * gg - 2.0 / 3.0 * fgg - 2.0 / 9.0 * ggg;
  rep.intermediates.push_back(check("|E[4NAT] - expansion|", std::abs(e4d - expansion), 0.0, tolerance));
  rep.intermediates.push_back(check("Re E[f conj g] <= (|f0|^2 + |g0|^2)/2", fg, 0.5 * (f0 * f0 + g0 * g0), tolerance));
  rep.intermediates.push_back(check("Re E[g conj g] <= Even(g)", gg, eg, tolerance));
  rep.intermediates.push_back(
      check("-Re E[fgg] <= |f0| (3/4 |g0|^2 + 1/4 Even(g)) + Dec", -fgg, f0 * (0.75 * g0 * g0 + 0.25 * eg) + dec, tolerance));
  rep.intermediates.push_back(check("-Re E[ggg] <= 1/2 - 3/2 |g0|^2", -ggg, 0.5 - 1.5 * g0 * g0, tolerance));

  const double combined = 2.0 / 3.0 + 2.0 / 3.0 * dec + f0 * f0 / 3.0 + 0.5 * f0 * g0 * g0 + eg * (2.0 / 3.0 + f0 / 6.0);
  rep.intermediates.push_back(check("E[4NAT] <= combined bound", e4d, combined, tolerance));

  const double substituted = -ef / 17.0 - eg * (2.0 / 17.0 - f0 / 34.0) + f0 * f0 / 17.0 + 3.0 / 34.0 * f0 * g0 * g0 +
                             2.0 / 17.0 * dec + 16.0 / 17.0;
  rep.intermediates.push_back(check("mixture <= first substitution", to_double(mixture), substituted, tolerance));
  const double second = 2.0 / 17.0 * (f0 * g0 * g0 - g0 * g0) + 2.0 / 17.0 * dec + 16.0 / 17.0;
  rep.intermediates.push_back(check("first substitution <= second substitution", substituted, second, tolerance));
  rep.intermediates.push_back(check("second substitution <= 16/17 + 2/17 Dec", second, rep.bound_rhs, tolerance));
  return rep;
}

std::array<double, 2> fournat_arithmetized(std::array<int, 4> a) {
  Complex pairs = 0.0, triples = 0.0;
  double pairs_re = 0.0, triples_re = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      pairs += omega_power(a[i] - a[j]);
      if (i < j) pairs_re += omega_power(a[i] - a[j]).real();
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      for (int k = j + 1; k < 4; ++k) {
        const Complex t = omega_power(a[i] + a[j] + a[k]);
        triples += t + std::conj(t);
        triples_re += t.real();
      }
    }
  }
  const Complex sum_form = 5.0 / 9.0 + pairs / 9.0 - triples / 9.0;
  // The sum form is real; a nonzero imaginary part counts against it.
  const double sum_value = sum_form.real() + std::abs(sum_form.imag());
  return {sum_value, 5.0 / 9.0 + 2.0 / 9.0 * pairs_re - 2.0 / 9.0 * triples_re};
}

ArithmetizationReport arithmetization_check() {
  ArithmetizationReport rep;
  for (int k = 0; k < 81; ++k) {
    const std::array<int, 4> a = {k % 3, k / 3 % 3, k / 9 % 3, k / 27 % 3};
    const double truth = four_nat(a[0], a[1], a[2], a[3]) ? 1.0 : 0.0;
    const auto forms = fournat_arithmetized(a);
    rep.max_residual_sum_form = std::max(rep.max_residual_sum_form, std::abs(forms[0] - truth));
    rep.max_residual_real_form = std::max(rep.max_residual_real_form, std::abs(forms[1] - truth));
  }
  return rep;
}

Rational undetermined_block_probability(int width) {
  const BlockMap blocks(1, width);
  std::uint64_t n = 0;
  for_each_nlin_outcome(blocks, [&](Index, Index, Index z, std::uint64_t w) {
    const Trit first = digit(z, 0);
    bool distinct = false;
    for (int j = 1; j < width; ++j) distinct = distinct || digit(z, j) != first;
    if (!distinct) n += w;
  });
  return ratio(n, nlin_denominator(blocks));
}

}  // namespace tritcert
