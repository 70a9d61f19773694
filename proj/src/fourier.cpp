#include "tritcert/fourier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "tritcert/distributions.hpp"
#include "tritcert/error.hpp"

namespace tritcert {

namespace {

const std::array<Complex, 3> kOmega = {
    Complex(1.0, 0.0),
    Complex(-0.5, std::numbers::sqrt3 / 2.0),
    Complex(-0.5, -std::numbers::sqrt3 / 2.0),
};

void check_table(const ComplexTable& f) {
  check_arity(f.arity);
  if (f.values.size() != kPow3[f.arity]) throw ShapeError("complex table has wrong size");
}

void check_shape(const ComplexTable& f, const ComplexTable& g, const BlockMap& blocks) {
  check_table(f);
  check_table(g);
  if (f.arity != blocks.blocks || g.arity != blocks.length()) {
    throw ShapeError("tables do not match block map K=" + std::to_string(blocks.blocks) +
                     ", L=" + std::to_string(blocks.length()));
  }
}

Index negate_index(Index alpha, int n) {
  Index out = 0;
  for (int i = 0; i < n; ++i, alpha /= 3) out += kPow3[i] * ((3 - alpha % 3) % 3);
  return out;
}

double half_power(int k) { return std::ldexp(1.0, -k); }

// Sum over pi3(alpha) = 0 of |g^(alpha)|^2 2^-#alpha.
double undecodable_mass(const FourierSpectrum& g_spec, const BlockMap& blocks) {
  double s = 0.0;
  for (Index a = 0; a < g_spec.size(); ++a) {
    if (blocks.project(a) == 0) s += std::norm(g_spec[a]) * half_power(support_count(a, g_spec.arity));
  }
  return s;
}

}  // namespace

Complex omega_power(int k) { return kOmega[((k % 3) + 3) % 3]; }

ComplexTable as_unit_roots(const FunctionTable& f) {
  ComplexTable out{f.arity(), std::vector<Complex>(f.size())};
  for (Index x = 0; x < f.size(); ++x) out.values[x] = kOmega[f(x)];
  return out;
}

ComplexTable indicator(const FunctionTable& f, Trit value) {
  ComplexTable out{f.arity(), std::vector<Complex>(f.size())};
  for (Index x = 0; x < f.size(); ++x) out.values[x] = f(x) == value ? 1.0 : 0.0;
  return out;
}

ComplexTable conjugate(const ComplexTable& f) {
  ComplexTable out = f;
  for (auto& v : out.values) v = std::conj(v);
  return out;
}

FourierSpectrum transform(const ComplexTable& f) {
  check_table(f);
  FourierSpectrum spec{f.arity, f.values, false};
  auto& a = spec.coefficients;
  for (int k = 0; k < f.arity; ++k) {
    const Index stride = kPow3[k];
    for (Index base = 0; base < a.size(); base += 3 * stride) {
      for (Index off = 0; off < stride; ++off) {
        const Index i0 = base + off, i1 = i0 + stride, i2 = i1 + stride;
        const Complex v0 = a[i0], v1 = a[i1], v2 = a[i2];
        // coefficient alpha_k = s collects v_t * omega^(-s t) / 3
        a[i0] = (v0 + v1 + v2) / 3.0;
        a[i1] = (v0 + v1 * kOmega[2] + v2 * kOmega[1]) / 3.0;
        a[i2] = (v0 + v1 * kOmega[1] + v2 * kOmega[2]) / 3.0;
      }
    }
  }
  return spec;
}

FourierSpectrum transform(const FunctionTable& f) {
  FourierSpectrum spec = transform(as_unit_roots(f));
  spec.source_is_folded = is_folded(f);
  return spec;
}

ComplexTable inverse_transform(const FourierSpectrum& spec) {
  check_arity(spec.arity);
  ComplexTable out{spec.arity, spec.coefficients};
  auto& a = out.values;
  for (int k = 0; k < spec.arity; ++k) {
    const Index stride = kPow3[k];
    for (Index base = 0; base < a.size(); base += 3 * stride) {
      for (Index off = 0; off < stride; ++off) {
        const Index i0 = base + off, i1 = i0 + stride, i2 = i1 + stride;
        const Complex v0 = a[i0], v1 = a[i1], v2 = a[i2];
        a[i0] = v0 + v1 + v2;
        a[i1] = v0 + v1 * kOmega[1] + v2 * kOmega[2];
        a[i2] = v0 + v1 * kOmega[2] + v2 * kOmega[1];
      }
    }
  }
  return out;
}

double parseval_residual(const FourierSpectrum& spec) {
  double s = 0.0;
  for (const auto& c : spec.coefficients) s += std::norm(c);
  return std::abs(s - 1.0);
}

double folded_support_violation(const FourierSpectrum& spec) {
  double worst = 0.0;
  for (Index a = 0; a < spec.size(); ++a) {
    if (digit_sum(a, spec.arity) % 3 != 1) worst = std::max(worst, std::abs(spec[a]));
  }
  return worst;
}

AlphaProfile profile(Index alpha, const BlockMap& blocks) {
  const int n = blocks.length();
  return AlphaProfile{TernaryString::from_index(n, alpha), digit_sum(alpha, n), support_count(alpha, n),
                      TernaryString::from_index(blocks.blocks, blocks.project(alpha))};
}

double dec_quantity(const FourierSpectrum& f_spec, const FourierSpectrum& g_spec, const BlockMap& blocks) {
  if (f_spec.arity != blocks.blocks || g_spec.arity != blocks.length()) {
    throw ShapeError("Dec: spectra do not match block map");
  }
  double s = 0.0;
  for (Index a = 0; a < g_spec.size(); ++a) {
    const Index p = blocks.project(a);
    if (p == 0) continue;
    s += std::abs(f_spec[p]) * std::norm(g_spec[a]) * half_power(support_count(a, g_spec.arity));
  }
  return s;
}

double even_mass(const FourierSpectrum& spec) {
  double s = 0.0;
  for (Index a = 0; a < spec.size(); ++a) {
    if (digit_sum(a, spec.arity) % 3 == 0) s += std::norm(spec[a]);
  }
  return s;
}

Complex character_block_expectation(Trit beta, Trit gamma, Trit a) {
  Complex s = 0.0;
  for (const auto& t : twopair_columns(a)) s += omega_power(beta * t[0] + gamma * t[1]);
  return s / 6.0;
}

Complex character_block_closed_form(Trit beta, Trit gamma, Trit a) {
  if (beta != gamma) return 0.0;
  return (beta == 0 ? 1.0 : -0.5) * omega_power(2 * a * beta);
}

Complex expect_fgg(const ComplexTable& f1, const ComplexTable& g1, const ComplexTable& g2, const BlockMap& blocks) {
  check_shape(f1, g1, blocks);
  check_shape(f1, g2, blocks);
  Complex s = 0.0;
  for_each_twopair_outcome(blocks, [&](Index x, Index y, Index z, Index) {
    s += f1.values[x] * g1.values[y] * g2.values[z];
  });
  return s / static_cast<double>(twopair_space_size(blocks));
}

Complex expect_ggg(const ComplexTable& g1, const ComplexTable& g2, const ComplexTable& g3, const BlockMap& blocks) {
  check_table(g1);
  if (g1.arity != blocks.length() || g2.arity != g1.arity || g3.arity != g1.arity) {
    throw ShapeError("ggg: tables do not match block map");
  }
  Complex s = 0.0;
  for_each_twopair_outcome(blocks, [&](Index, Index y, Index z, Index w) {
    s += g1.values[y] * g2.values[z] * g3.values[w];
  });
  return s / static_cast<double>(twopair_space_size(blocks));
}

ExpansionCheck triple_product_expansion(const ComplexTable& f1, const ComplexTable& g1, const ComplexTable& g2,
                                        const BlockMap& blocks) {
  const Complex lhs = expect_fgg(f1, g1, g2, blocks);
  const auto f_hat = transform(f1);
  const auto g1_hat = transform(g1);
  const auto g2_hat = transform(g2);
  Complex rhs = 0.0;
  const int L = blocks.length();
  for (Index a = 0; a < g1_hat.size(); ++a) {
    const int k = support_count(a, L);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    rhs += f_hat[blocks.project(a)] * g1_hat[a] * g2_hat[a] * (sign * half_power(k));
  }
  return {lhs, rhs, std::abs(lhs - rhs)};
}

ExpansionCheck pair_correlation_expansion(const ComplexTable& g, const BlockMap& blocks) {
  const ComplexTable one{blocks.blocks, std::vector<Complex>(kPow3[blocks.blocks], 1.0)};
  const Complex lhs = expect_fgg(one, g, conjugate(g), blocks);
  const auto g_hat = transform(g);
  const int L = blocks.length();
  Complex rhs = 0.0;
  for (Index a = 0; a < g_hat.size(); ++a) {
    if (blocks.project(a) != 0) continue;
    const int k = support_count(a, L);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    rhs += g_hat[a] * std::conj(g_hat[negate_index(a, L)]) * (sign * half_power(k));
  }
  return {lhs, rhs, std::abs(lhs - rhs)};
}

ExpansionCheck ggg_expansion(const ComplexTable& g1, const ComplexTable& g2, const ComplexTable& g3,
                             const BlockMap& blocks) {
  const Complex lhs = expect_ggg(g1, g2, g3, blocks);
  const auto h1 = transform(g1);
  const auto h2 = transform(g2);
  const auto h3 = transform(g3);
  const int L = blocks.length();
  const Index n = kPow3[L];
  const Index nk = kPow3[blocks.blocks];

  std::vector<Index> proj(n);
  std::vector<std::vector<Trit>> digits(n, std::vector<Trit>(L));
  std::vector<std::vector<Index>> by_projection(nk);
  for (Index a = 0; a < n; ++a) {
    proj[a] = blocks.project(a);
    for (int j = 0; j < L; ++j) digits[a][j] = digit(a, j);
    by_projection[proj[a]].push_back(a);
  }
  // psi(alpha, beta, gamma): pi3(gamma) = -(pi3(alpha) + pi3(beta)) blockwise.
  auto complement = [&](Index pa, Index pb) {
    Index out = 0;
    for (int i = 0; i < blocks.blocks; ++i) out += kPow3[i] * ((6 - digit(pa, i) - digit(pb, i)) % 3);
    return out;
  };
  Complex rhs = 0.0;
  for (Index a = 0; a < n; ++a) {
    if (h1[a] == 0.0) continue;
    for (Index b = 0; b < n; ++b) {
      const Complex ab = h1[a] * h2[b];
      if (ab == 0.0) continue;
      for (Index c : by_projection[complement(proj[a], proj[b])]) {
        double phi = 1.0;
        for (int j = 0; j < L && phi != 0.0; ++j) {
          const int aj = digits[a][j], bj = digits[b][j], cj = digits[c][j];
          const int hits = ((aj + bj) % 3 != 0) + ((bj + cj) % 3 != 0) + ((aj + cj) % 3 != 0);
          phi *= 1.0 - 0.5 * hits;
        }
        if (phi != 0.0) rhs += ab * h3[c] * phi;
      }
    }
  }
  return {lhs, rhs, std::abs(lhs - rhs)};
}

BlockMap blocks_for(const FunctionTable& f, const FunctionTable& g) {
  if (f.arity() < 1 || g.arity() < f.arity() || g.arity() % f.arity() != 0) {
    throw ShapeError("need arities K >= 1 and L = dK, got K=" + std::to_string(f.arity()) +
                     ", L=" + std::to_string(g.arity()));
  }
  return BlockMap(f.arity(), g.arity() / f.arity());
}

BoundCheck efgg_bound_check(const FunctionTable& f, const FunctionTable& g) {
  const BlockMap blocks = blocks_for(f, g);
  const auto fu = as_unit_roots(f);
  const auto gu = as_unit_roots(g);
  const auto f_hat = transform(fu);
  const auto g_hat = transform(gu);
  const double lhs = -expect_fgg(fu, gu, gu, blocks).real();
  const double rhs = dec_quantity(f_hat, g_hat, blocks) + std::abs(f_hat[0]) * undecodable_mass(g_hat, blocks);
  return {lhs, rhs};
}

BoundCheck fg_empty_coefficient_bound(const FunctionTable& f, const FunctionTable& g) {
  // x and y are independent, so E[f(x) conj g(y)] = E[f] E[conj g].
  Complex ef = 0.0, eg = 0.0;
  for (Index x = 0; x < f.size(); ++x) ef += kOmega[f(x)];
  for (Index y = 0; y < g.size(); ++y) eg += kOmega[g(y)];
  ef /= static_cast<double>(f.size());
  eg /= static_cast<double>(g.size());
  const double lhs = (ef * std::conj(eg)).real();
  const auto f_hat = transform(f);
  const auto g_hat = transform(g);
  return {lhs, 0.5 * (std::norm(f_hat[0]) + std::norm(g_hat[0]))};
}

BoundCheck gg_even_bound(const FunctionTable& g, const BlockMap& blocks) {
  const auto gu = as_unit_roots(g);
  const ComplexTable one{blocks.blocks, std::vector<Complex>(kPow3[blocks.blocks], 1.0)};
  const double lhs = expect_fgg(one, gu, conjugate(gu), blocks).real();
  return {lhs, even_mass(transform(gu))};
}

BoundCheck fgg_even_bound(const FunctionTable& f, const FunctionTable& g) {
  const BlockMap blocks = blocks_for(f, g);
  const auto fu = as_unit_roots(f);
  const auto gu = as_unit_roots(g);
  const auto f_hat = transform(fu);
  const auto g_hat = transform(gu);
  const double lhs = -expect_fgg(fu, gu, gu, blocks).real();
  const double rhs = std::abs(f_hat[0]) * (0.75 * std::norm(g_hat[0]) + 0.25 * even_mass(g_hat)) +
                     dec_quantity(f_hat, g_hat, blocks);
  return {lhs, rhs};
}

BoundCheck empty_within_even(const FourierSpectrum& spec) { return {std::norm(spec[0]), even_mass(spec)}; }

bool GggReport::passed(double tolerance) const {
  return expansion.holds(tolerance) && frequency_residual < tolerance && three_ones.holds(tolerance) &&
         bound.holds(tolerance);
}

GggReport ggg_expansion_and_bound(const FunctionTable& g, const BlockMap& blocks) {
  if (g.arity() != blocks.length()) throw ShapeError("ggg: table does not match block map");
  GggReport rep;
  const auto gu = as_unit_roots(g);
  rep.expansion = ggg_expansion(gu, gu, gu, blocks);

  std::array<double, 3> freq{};
  for (Index y = 0; y < g.size(); ++y) freq[g(y)] += 1.0;
  for (auto& v : freq) v /= static_cast<double>(g.size());
  rep.p = freq[0];
  rep.q = freq[1];
  rep.r = freq[2];
  rep.empty_squared = std::norm(transform(gu)[0]);
  const double cubic = rep.p * rep.p * rep.p + rep.q * rep.q * rep.q + rep.r * rep.r * rep.r - 3.0 * rep.p * rep.q * rep.r;
  rep.frequency_residual = std::abs(rep.empty_squared - cubic);

  const std::array<ComplexTable, 3> ind = {indicator(g, 0), indicator(g, 1), indicator(g, 2)};
  Complex same = 0.0;
  for (const auto& t : ind) same += expect_ggg(t, t, t, blocks);
  const Complex rainbow = expect_ggg(ind[0], ind[1], ind[2], blocks);
  rep.three_ones = {same, 3.0 * rainbow + rep.empty_squared, std::abs(same - (3.0 * rainbow + rep.empty_squared))};

  rep.bound = {-rep.expansion.lhs.real(), 0.5 - 1.5 * rep.empty_squared};
  return rep;
}

}  // namespace tritcert
