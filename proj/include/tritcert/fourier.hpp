#pragma once

// Fourier analysis over Z_3^n for functions into U_3 (and, for the general
// expansion identities, arbitrary complex-valued functions).
//
// f^(alpha) = E_x[ f(x) * conj(chi_alpha(x)) ],  chi_alpha(x) = omega^(alpha . x).
// A Z_3-valued table f is identified with omega^f.

#include <complex>
#include <vector>

#include "tritcert/ternary.hpp"

namespace tritcert {

using Complex = std::complex<double>;

inline constexpr double kIdentityTolerance = 1e-9;
inline constexpr double kPointTolerance = 1e-12;

/// omega^k for any integer k.
Complex omega_power(int k);

struct ComplexTable {
  int arity = 0;
  std::vector<Complex> values;
};

ComplexTable as_unit_roots(const FunctionTable& f);
/// Indicator of {x : f(x) = value}.
ComplexTable indicator(const FunctionTable& f, Trit value);
ComplexTable conjugate(const ComplexTable& f);

struct FourierSpectrum {
  int arity = 0;
  std::vector<Complex> coefficients;
  bool source_is_folded = false;

  const Complex& operator[](Index alpha) const { return coefficients[alpha]; }
  std::size_t size() const { return coefficients.size(); }
};

/// Radix-3 transform, O(n 3^n).
FourierSpectrum transform(const ComplexTable& f);
FourierSpectrum transform(const FunctionTable& f);
ComplexTable inverse_transform(const FourierSpectrum& spec);

/// |sum |f^(alpha)|^2 - 1|.
double parseval_residual(const FourierSpectrum& spec);

/// max |f^(alpha)| over alpha with |alpha| != 1 (mod 3).
double folded_support_violation(const FourierSpectrum& spec);

struct AlphaProfile {
  TernaryString alpha;
  int weight = 0;         // |alpha|, as an integer sum of digits
  int support_count = 0;  // #alpha
  TernaryString projection;
};

AlphaProfile profile(Index alpha, const BlockMap& blocks);

/// Dec(f, g) = sum_{pi3(alpha) != 0} |f^(pi3(alpha))| |g^(alpha)|^2 2^-#alpha.
double dec_quantity(const FourierSpectrum& f_spec, const FourierSpectrum& g_spec, const BlockMap& blocks);

/// Even(f) = sum_{|alpha| = 0 mod 3} |f^(alpha)|^2.
double even_mass(const FourierSpectrum& spec);

/// E[omega^(beta y + gamma z) | x_i = a] over the six (y, z) column pairs of
/// the 4NAT coupling, by enumeration.
Complex character_block_expectation(Trit beta, Trit gamma, Trit a);
/// (-1/2)^#beta omega^(2 a beta) if beta == gamma, else 0.
Complex character_block_closed_form(Trit beta, Trit gamma, Trit a);

struct ExpansionCheck {
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  bool holds(double tolerance = kIdentityTolerance) const { return residual < tolerance; }
};

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack() const { return rhs - lhs; }
  bool holds(double tolerance = kIdentityTolerance) const { return lhs <= rhs + tolerance; }
};

// Direct expectations over the 4NAT-test coupling (x, y, z, w).
Complex expect_fgg(const ComplexTable& f1, const ComplexTable& g1, const ComplexTable& g2, const BlockMap& blocks);
Complex expect_ggg(const ComplexTable& g1, const ComplexTable& g2, const ComplexTable& g3, const BlockMap& blocks);

/// E[f1(x) g1(y) g2(z)] against sum_alpha f1^(pi3 alpha) g1^(alpha) g2^(alpha) (-1/2)^#alpha.
ExpansionCheck triple_product_expansion(const ComplexTable& f1, const ComplexTable& g1, const ComplexTable& g2,
                                        const BlockMap& blocks);

/// E[g(y) conj g(z)] against the sum over alpha with |alpha[i]| = 0 for all i
/// of g^(alpha) conj(g^(-alpha)) (-1/2)^#alpha.
ExpansionCheck pair_correlation_expansion(const ComplexTable& g, const BlockMap& blocks);

/// E[g1(y) g2(z) g3(w)] against the psi-restricted, Phi-weighted triple sum.
ExpansionCheck ggg_expansion(const ComplexTable& g1, const ComplexTable& g2, const ComplexTable& g3,
                             const BlockMap& blocks);

/// -Re E[f g g] <= Dec(f, g) + |f^(0)| sum_{pi3(alpha)=0} |g^(alpha)|^2 2^-#alpha.
BoundCheck efgg_bound_check(const FunctionTable& f, const FunctionTable& g);
/// Re E[f(x) conj g(y)] <= (|f^(0)|^2 + |g^(0)|^2) / 2.
BoundCheck fg_empty_coefficient_bound(const FunctionTable& f, const FunctionTable& g);
/// Re E[g(y) conj g(z)] <= Even(g).
BoundCheck gg_even_bound(const FunctionTable& g, const BlockMap& blocks);
/// -Re E[f g g] <= |f^(0)| (3/4 |g^(0)|^2 + 1/4 Even(g)) + Dec(f, g).
BoundCheck fgg_even_bound(const FunctionTable& f, const FunctionTable& g);
/// |f^(0)|^2 <= Even(f).
BoundCheck empty_within_even(const FourierSpectrum& spec);

struct GggReport {
  ExpansionCheck expansion;     // E[ggg] vs psi/Phi sum
  double p = 0.0, q = 0.0, r = 0.0;
  double empty_squared = 0.0;   // |g^(0)|^2
  double frequency_residual = 0.0;  // | |g^(0)|^2 - (p^3+q^3+r^3-3pqr) |
  ExpansionCheck three_ones;    // sum_a E[1_a 1_a 1_a] vs 3 E[1_0 1_1 1_2] + |g^(0)|^2
  BoundCheck bound;             // -Re E[ggg] <= 1/2 - 3/2 |g^(0)|^2

  bool passed(double tolerance = kIdentityTolerance) const;
};

GggReport ggg_expansion_and_bound(const FunctionTable& g, const BlockMap& blocks);

/// Infers the block map from arities K = f.arity(), L = g.arity(), L = dK.
BlockMap blocks_for(const FunctionTable& f, const FunctionTable& g);

}  // namespace tritcert
