#pragma once

// Enumerators for the three coupled test distributions. Each visits every
// outcome exactly once with an integer weight over a known common
// denominator, so probabilities can be accumulated exactly in int64.
//
//   2-NLin:   x ~ Z_3^K, y ~ Z_3^L uniform; z_j uniform on Z_3 \ {x_i, y_j}
//             (i = block of j). Denominator 3^K 3^L 2^L, weight 2^(#{j: x_i != y_j}).
//   4NAT:     x ~ Z_3^K; per column (y_j, z_j, w_j) uniform over the six
//             triples with TwoPair(x_i, y_j, z_j, w_j). Denominator 3^K 6^L, weight 1.
//   coupled:  the 2-NLin outcome extended by (y', y'') with a fair coin per
//             off-diagonal column. Denominator 3^K 3^L 2^L, weight 1.

#include <array>
#include <cstdint>
#include <vector>

#include "tritcert/error.hpp"
#include "tritcert/rational.hpp"
#include "tritcert/ternary.hpp"

namespace tritcert {

// Upper bound on enumerated outcomes per space.
inline constexpr std::uint64_t kMaxOutcomes = std::uint64_t{1} << 24;

/// The six (y, z, w) completions of TwoPair(a, y, z, w), in a fixed order.
constexpr std::array<std::array<Trit, 3>, 6> twopair_columns(Trit a) {
  const Trit a1 = add_mod3(a, 1);
  const Trit a2 = add_mod3(a, 2);
  return {{{a, a1, a1}, {a1, a, a1}, {a1, a1, a}, {a, a2, a2}, {a2, a, a2}, {a2, a2, a}}};
}

inline std::uint64_t twopair_space_size(const BlockMap& blocks) {
  std::uint64_t n = kPow3[blocks.blocks];
  for (int j = 0; j < blocks.length(); ++j) {
    n *= 6;
    if (n > kMaxOutcomes) throw CapacityError("4NAT outcome space too large");
  }
  return n;
}

inline std::uint64_t nlin_denominator(const BlockMap& blocks) {
  const int L = blocks.length();
  const std::uint64_t n = std::uint64_t{kPow3[blocks.blocks]} * kPow3[L] * (std::uint64_t{1} << L);
  if (n > kMaxOutcomes) throw CapacityError("2-NLin outcome space too large");
  return n;
}

namespace detail {

inline void check_enumerable(const BlockMap& blocks) {
  check_arity(blocks.blocks);
  check_arity(blocks.length());
}

}  // namespace detail

/// fn(x, y, z, w) for every 4NAT-test outcome; each has weight 1 / (3^K 6^L).
template <class Fn>
void for_each_twopair_outcome(const BlockMap& blocks, Fn&& fn) {
  detail::check_enumerable(blocks);
  twopair_space_size(blocks);
  const int L = blocks.length();
  std::vector<Index> y(L + 1), z(L + 1), w(L + 1);
  std::vector<int> choice(L, 0);
  for (Index x = 0; x < kPow3[blocks.blocks]; ++x) {
    std::vector<std::array<std::array<Trit, 3>, 6>> cols(L);
    for (int j = 0; j < L; ++j) cols[j] = twopair_columns(digit(x, blocks.block_of(j)));
    // Odometer over the per-column choices; y[j] holds the partial index of
    // columns [0, j).
    std::fill(choice.begin(), choice.end(), 0);
    y[0] = z[0] = w[0] = 0;
    for (int j = 0; j < L; ++j) {
      const auto& t = cols[j][0];
      y[j + 1] = y[j] + kPow3[j] * t[0];
      z[j + 1] = z[j] + kPow3[j] * t[1];
      w[j + 1] = w[j] + kPow3[j] * t[2];
    }
    while (true) {
      fn(x, y[L], z[L], w[L]);
      int j = L - 1;
      while (j >= 0 && choice[j] == 5) --j;
      if (j < 0) break;
      ++choice[j];
      for (int k = j + 1; k < L; ++k) choice[k] = 0;
      for (int k = j; k < L; ++k) {
        const auto& t = cols[k][choice[k]];
        y[k + 1] = y[k] + kPow3[k] * t[0];
        z[k + 1] = z[k] + kPow3[k] * t[1];
        w[k + 1] = w[k] + kPow3[k] * t[2];
      }
    }
  }
}

/// fn(x, y, z, weight) for every 2-NLin outcome; weight over nlin_denominator().
template <class Fn>
void for_each_nlin_outcome(const BlockMap& blocks, Fn&& fn) {
  detail::check_enumerable(blocks);
  nlin_denominator(blocks);
  const int L = blocks.length();
  // Per column: candidate z digits and count.
  std::vector<std::array<Trit, 2>> options(L);
  std::vector<int> count(L), choice(L);
  std::vector<Index> z(L + 1);
  for (Index x = 0; x < kPow3[blocks.blocks]; ++x) {
    for (Index y = 0; y < kPow3[L]; ++y) {
      int offdiag = 0;
      for (int j = 0; j < L; ++j) {
        const Trit xi = digit(x, blocks.block_of(j));
        const Trit yj = digit(y, j);
        if (xi == yj) {
          options[j] = {add_mod3(xi, 1), add_mod3(xi, 2)};
          count[j] = 2;
        } else {
          options[j] = {static_cast<Trit>(3 - xi - yj), 0};
          count[j] = 1;
          ++offdiag;
        }
        choice[j] = 0;
      }
      const std::uint64_t weight = std::uint64_t{1} << offdiag;
      z[0] = 0;
      for (int j = 0; j < L; ++j) z[j + 1] = z[j] + kPow3[j] * options[j][0];
      while (true) {
        fn(x, y, z[L], weight);
        int j = L - 1;
        while (j >= 0 && choice[j] == count[j] - 1) --j;
        if (j < 0) break;
        ++choice[j];
        for (int k = j + 1; k < L; ++k) choice[k] = 0;
        for (int k = j; k < L; ++k) z[k + 1] = z[k] + kPow3[k] * options[k][choice[k]];
      }
    }
  }
}

/// Per-column y'/y'' rule. coin selects which of the pair receives x_i when
/// x_i != y_j; it is ignored on the diagonal.
constexpr std::array<Trit, 2> split_column(Trit xi, Trit yj, Trit zj, bool coin) {
  if (xi == yj) {
    const Trit lone = static_cast<Trit>(3 - xi - zj);
    return {lone, lone};
  }
  return coin ? std::array<Trit, 2>{yj, xi} : std::array<Trit, 2>{xi, yj};
}

/// fn(x, y, z, y1, y2) over the 2-NLin space extended with the y'/y'' coins.
/// Every outcome has weight 1 / (3^K 3^L 2^L).
template <class Fn>
void for_each_coupled_outcome(const BlockMap& blocks, Fn&& fn) {
  const int L = blocks.length();
  for_each_nlin_outcome(blocks, [&](Index x, Index y, Index z, std::uint64_t) {
    std::vector<int> free_cols;
    for (int j = 0; j < L; ++j) {
      if (digit(x, blocks.block_of(j)) != digit(y, j)) free_cols.push_back(j);
    }
    const std::uint32_t combos = 1u << free_cols.size();
    for (std::uint32_t mask = 0; mask < combos; ++mask) {
      Index y1 = 0, y2 = 0;
      int bit = 0;
      for (int j = 0; j < L; ++j) {
        const Trit xi = digit(x, blocks.block_of(j));
        const Trit yj = digit(y, j);
        bool coin = false;
        if (xi != yj) coin = (mask >> bit++) & 1u;
        const auto pair = split_column(xi, yj, digit(z, j), coin);
        y1 += kPow3[j] * pair[0];
        y2 += kPow3[j] * pair[1];
      }
      fn(x, y, z, y1, y2);
    }
  });
}

}  // namespace tritcert
