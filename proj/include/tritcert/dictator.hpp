#pragma once

// The 2-NLin, 3-Coloring and 4NAT function tests as exact outcome spaces,
// their pass probabilities, the y'/y'' coupling, and executable forms of the
// soundness bounds.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tritcert/fourier.hpp"
#include "tritcert/rational.hpp"
#include "tritcert/ternary.hpp"

namespace tritcert {

enum class Branch { None, FirstVsMiddle, SecondVsMiddle };

struct TestOutcome {
  std::vector<Index> strings;  // x, then the Z_3^L strings of the space
  Branch branch = Branch::None;
  std::uint64_t weight = 0;    // over OutcomeSpace::denominator
};

struct OutcomeSpace {
  BlockMap blocks;
  std::vector<TestOutcome> outcomes;
  std::uint64_t denominator = 1;

  Rational weight(std::size_t i) const;
  Rational total_weight() const;
};

/// Outcomes (x, y, z) of the 2-NLin test distribution.
OutcomeSpace enumerate_2nlin_distribution(const BlockMap& blocks);
/// Outcomes (x, y, z, w) of the 4NAT test distribution.
OutcomeSpace enumerate_4nat_distribution(const BlockMap& blocks);
/// Outcomes (x, y, z, y', y'') of the 2-NLin distribution with coins.
OutcomeSpace enumerate_coupled_distribution(const BlockMap& blocks);
/// The 2-NLin space with the 1/4 : 3/4 branch coin folded in.
OutcomeSpace with_2nlin_branches(const OutcomeSpace& nlin);

/// Requires f, g, h folded (ContractError otherwise).
Rational pass_probability_2nlin(const FunctionTable& f, const FunctionTable& g, const FunctionTable& h);
/// The same test with no folding precondition.
Rational pass_probability_2nlin_unfolded(const FunctionTable& f, const FunctionTable& g, const FunctionTable& h);
/// (1/17) p_f + (4/17) p_g + (12/17) * unfolded 2-NLin.
Rational pass_probability_3col(const FunctionTable& f, const FunctionTable& g, const FunctionTable& h);
/// Requires f, g folded.
Rational pass_probability_4nat(const FunctionTable& f, const FunctionTable& g);
/// 4NAT test outcome count with no folding precondition.
Rational fournat_expectation(const FunctionTable& f, const FunctionTable& g);

enum class MiddleTest { TwoNLin, ThreeColoring };

/// Per-point minimizer of (1/4) Pr[f(x) = c, z] + (3/4) Pr[g(y) = c, z],
/// ties to the least c. For MiddleTest::TwoNLin with folded f and g the
/// choice is made on folding representatives and extended by folding, so
/// the result is folded and still optimal.
FunctionTable best_middle_function(const FunctionTable& f, const FunctionTable& g, MiddleTest test);

/// y'/y'' for one 2-NLin outcome. coins[j] picks which of the pair gets x_i
/// on off-diagonal columns.
std::array<TernaryString, 2> coupling_y_prime(const TernaryString& x, const TernaryString& y, const TernaryString& z,
                                              const BlockMap& blocks, const std::vector<bool>& coins);

/// E[4NAT(f(x), g(y), g(y'), g(y''))] over the coupled space.
Rational coupled_4nat_expectation(const FunctionTable& f, const FunctionTable& g);

struct HiddenGadget {
  Rational lhs;  // 2-NLin pass probability
  Rational rhs;  // 3/4 + 1/4 E[4NAT(f(x), g(y), g(y'), g(y''))]
  bool holds = false;
};

HiddenGadget hidden_gadget_inequality(const FunctionTable& f, const FunctionTable& g, const FunctionTable& h);

struct FoldingTest {
  Rational probability;  // Pr[f(x) != f(x+1)]
  double even = 0.0;
  double residual = 0.0;  // |probability - (1 - Even(f))|
};

FoldingTest folding_test_probability(const FunctionTable& f);

struct Intermediate {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct TestReport {
  std::string test;
  Rational pass_probability;
  double dec = 0.0;
  double even_f = 0.0;
  double even_g = 0.0;
  Rational p_f;
  Rational p_g;
  double bound_rhs = 0.0;
  bool bound_satisfied = false;
  std::vector<Intermediate> intermediates;

  bool all_hold() const;
};

/// Pass probability <= 2/3 + 2/3 Dec(f, g); folded inputs.
TestReport soundness_bound_4nat(const FunctionTable& f, const FunctionTable& g,
                                double tolerance = kIdentityTolerance);
/// Pass probability <= 16/17 + 2/17 Dec(f, g), with h = best_middle_function
/// and every step of the intermediate chain checked.
TestReport soundness_bound_3col(const FunctionTable& f, const FunctionTable& g,
                                double tolerance = kIdentityTolerance);

/// 5/9 + 2/3 Re E[f conj g] + 2/3 Re E[g conj g] - 2/3 Re E[fgg] - 2/9 Re E[ggg],
/// with every expectation taken from the spectra.
double fournat_spectral_expansion(const FunctionTable& f, const FunctionTable& g);

struct ArithmetizationReport {
  double max_residual_sum_form = 0.0;
  double max_residual_real_form = 0.0;
  bool passed(double tolerance = kPointTolerance) const {
    return max_residual_sum_form < tolerance && max_residual_real_form < tolerance;
  }
};

/// Both Fourier forms of 4NAT, at one point.
std::array<double, 2> fournat_arithmetized(std::array<int, 4> a);
ArithmetizationReport arithmetization_check();

/// Probability that a block of z holds fewer than two distinct values (so it
/// does not pin down x_i), for block width d.
Rational undetermined_block_probability(int width);

}  // namespace tritcert
