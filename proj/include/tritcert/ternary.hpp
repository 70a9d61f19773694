#pragma once

// Strings over Z_3, block views under the canonical d-to-1 projection, and
// dense function tables Z_3^n -> Z_3.
//
// Indexing is base-3 little-endian: digit 0 is the least significant trit,
// so index(x) = sum_i x_i * 3^i. Coordinates and blocks are 0-based; block i
// of a length dK string holds coordinates [i*d, (i+1)*d).

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tritcert {

using Trit = std::uint8_t;
using Index = std::uint32_t;

inline constexpr int kMaxArity = 12;

constexpr Index pow3(int n) {
  Index r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

inline constexpr std::array<Index, kMaxArity + 1> kPow3 = [] {
  std::array<Index, kMaxArity + 1> p{};
  for (int i = 0; i <= kMaxArity; ++i) p[i] = pow3(i);
  return p;
}();

constexpr Trit add_mod3(int a, int b) { return static_cast<Trit>(((a + b) % 3 + 3) % 3); }

inline Trit digit(Index idx, int pos) { return static_cast<Trit>((idx / kPow3[pos]) % 3); }

/// Throws CapacityError for n outside [0, kMaxArity].
void check_arity(int n);

/// Index of x + (c, c, ..., c).
Index shift_index(Index idx, int n, Trit c);

/// Sum of the digits of idx (the |alpha| of a character index).
int digit_sum(Index idx, int n);

/// Number of nonzero digits (#alpha).
int support_count(Index idx, int n);

class TernaryString {
 public:
  TernaryString() = default;
  explicit TernaryString(std::vector<Trit> digits);

  static TernaryString from_index(int n, Index idx);
  static TernaryString zeros(int n) { return TernaryString(std::vector<Trit>(n, 0)); }

  Index index() const;
  int size() const { return static_cast<int>(digits_.size()); }
  Trit operator[](int i) const { return digits_[i]; }
  std::span<const Trit> digits() const { return digits_; }

  TernaryString shifted(Trit c) const;

  bool operator==(const TernaryString&) const = default;

 private:
  std::vector<Trit> digits_;
};

/// Canonical d-to-1 projection: coordinate j lies in block j / d.
struct BlockMap {
  int blocks = 1;  // K
  int width = 1;   // d

  BlockMap() = default;
  BlockMap(int blocks, int width);

  int length() const { return blocks * width; }
  int block_of(int position) const { return position / width; }

  TernaryString block(const TernaryString& y, int i) const;
  TernaryString concat(std::span<const TernaryString> parts) const;

  /// pi_3: block-wise digit sums mod 3, as an index into Z_3^K.
  Index project(Index alpha) const;
  TernaryString project(const TernaryString& alpha) const;

  bool operator==(const BlockMap&) const = default;
};

class FunctionTable {
 public:
  FunctionTable() = default;
  /// values.size() must be 3^arity; folded == true is verified by a full scan.
  FunctionTable(int arity, std::vector<Trit> values, bool folded = false);

  static FunctionTable constant(int arity, Trit c);
  static FunctionTable dictator(int arity, int coordinate);
  /// Extends a table given on the representatives with first trit 0, listed
  /// in increasing index order (3^(n-1) of them), by f(x + c) = f(x) + c.
  static FunctionTable fold_extend(int arity, std::span<const Trit> representatives);

  int arity() const { return arity_; }
  std::size_t size() const { return values_.size(); }
  bool folded_flag() const { return folded_; }
  std::span<const Trit> values() const { return values_; }

  Trit operator()(Index x) const { return values_[x]; }
  Trit at(const TernaryString& x) const;

  /// Values on the folding representatives (inverse of fold_extend).
  std::vector<Trit> representatives() const;

  bool operator==(const FunctionTable&) const = default;

 private:
  int arity_ = 0;
  std::vector<Trit> values_{0};
  bool folded_ = false;
};

bool is_folded(const FunctionTable& f);

/// Uniform trit from a 64-bit engine; bit-identical across platforms.
inline Trit random_trit(std::mt19937_64& rng) { return static_cast<Trit>(rng() % 3); }

FunctionTable random_table(int arity, std::mt19937_64& rng);
FunctionTable random_folded_table(int arity, std::mt19937_64& rng);

}  // namespace tritcert
