#include "tritcert/ternary.hpp"

#include <string>
#include <utility>

#include "tritcert/error.hpp"

namespace tritcert {

void check_arity(int n) {
  if (n < 0 || n > kMaxArity) {
    throw CapacityError("arity " + std::to_string(n) + " outside [0, " + std::to_string(kMaxArity) + "]");
  }
}

Index shift_index(Index idx, int n, Trit c) {
  Index out = 0;
  for (int i = 0; i < n; ++i) {
    out += kPow3[i] * add_mod3(idx % 3, c);
    idx /= 3;
  }
  return out;
}

int digit_sum(Index idx, int n) {
  int s = 0;
  for (int i = 0; i < n; ++i, idx /= 3) s += static_cast<int>(idx % 3);
  return s;
}

int support_count(Index idx, int n) {
  int s = 0;
  for (int i = 0; i < n; ++i, idx /= 3) s += (idx % 3) != 0;
  return s;
}

TernaryString::TernaryString(std::vector<Trit> digits) : digits_(std::move(digits)) {
  for (Trit t : digits_) {
    if (t > 2) throw ContractError("trit out of range: " + std::to_string(t));
  }
}

TernaryString TernaryString::from_index(int n, Index idx) {
  check_arity(n);
  if (idx >= kPow3[n]) throw CapacityError("index " + std::to_string(idx) + " out of range for n=" + std::to_string(n));
  std::vector<Trit> d(n);
  for (int i = 0; i < n; ++i, idx /= 3) d[i] = static_cast<Trit>(idx % 3);
  return TernaryString(std::move(d));
}

Index TernaryString::index() const {
  check_arity(size());
  Index idx = 0;
  for (int i = size() - 1; i >= 0; --i) idx = idx * 3 + digits_[i];
  return idx;
}

TernaryString TernaryString::shifted(Trit c) const {
  std::vector<Trit> d(digits_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = add_mod3(digits_[i], c);
  return TernaryString(std::move(d));
}

BlockMap::BlockMap(int blocks_, int width_) : blocks(blocks_), width(width_) {
  if (blocks < 1 || width < 1) throw ShapeError("block map needs K >= 1 and d >= 1");
}

TernaryString BlockMap::block(const TernaryString& y, int i) const {
  if (y.size() != length()) throw ShapeError("string length does not match K*d");
  if (i < 0 || i >= blocks) throw ShapeError("block index out of range");
  std::vector<Trit> out(y.digits().begin() + i * width, y.digits().begin() + (i + 1) * width);
  return TernaryString(std::move(out));
}

TernaryString BlockMap::concat(std::span<const TernaryString> parts) const {
  if (static_cast<int>(parts.size()) != blocks) throw ShapeError("expected K blocks");
  std::vector<Trit> out;
  out.reserve(length());
  for (const auto& p : parts) {
    if (p.size() != width) throw ShapeError("block has wrong width");
    out.insert(out.end(), p.digits().begin(), p.digits().end());
  }
  return TernaryString(std::move(out));
}

Index BlockMap::project(Index alpha) const {
  Index out = 0;
  for (int i = 0; i < blocks; ++i) {
    int s = 0;
    for (int j = 0; j < width; ++j, alpha /= 3) s += static_cast<int>(alpha % 3);
    out += kPow3[i] * static_cast<Index>(s % 3);
  }
  return out;
}

TernaryString BlockMap::project(const TernaryString& alpha) const {
  if (alpha.size() != length()) throw ShapeError("string length does not match K*d");
  return TernaryString::from_index(blocks, project(alpha.index()));
}

FunctionTable::FunctionTable(int arity, std::vector<Trit> values, bool folded)
    : arity_(arity), values_(std::move(values)), folded_(folded) {
  check_arity(arity_);
  if (values_.size() != kPow3[arity_]) {
    throw ShapeError("table for arity " + std::to_string(arity_) + " needs " + std::to_string(kPow3[arity_]) +
                     " values, got " + std::to_string(values_.size()));
  }
  for (Trit t : values_) {
    if (t > 2) throw ContractError("table value out of range");
  }
  if (folded_ && !is_folded(*this)) throw ContractError("table flagged folded but f(x+c) != f(x)+c");
}

FunctionTable FunctionTable::constant(int arity, Trit c) {
  check_arity(arity);
  return FunctionTable(arity, std::vector<Trit>(kPow3[arity], c));
}

FunctionTable FunctionTable::dictator(int arity, int coordinate) {
  check_arity(arity);
  if (coordinate < 0 || coordinate >= arity) throw ShapeError("dictator coordinate out of range");
  std::vector<Trit> v(kPow3[arity]);
  for (Index x = 0; x < v.size(); ++x) v[x] = digit(x, coordinate);
  return FunctionTable(arity, std::move(v), true);
}

FunctionTable FunctionTable::fold_extend(int arity, std::span<const Trit> representatives) {
  check_arity(arity);
  if (arity == 0) throw ShapeError("no folded function exists on Z_3^0");
  if (representatives.size() != kPow3[arity - 1]) throw ShapeError("expected 3^(n-1) representative values");
  std::vector<Trit> v(kPow3[arity]);
  for (Index x = 0; x < v.size(); ++x) {
    const Trit c = static_cast<Trit>(x % 3);
    const Index rep = shift_index(x, arity, static_cast<Trit>((3 - c) % 3));
    const Trit base = representatives[rep / 3];
    if (base > 2) throw ContractError("representative value out of range");
    v[x] = add_mod3(base, c);
  }
  return FunctionTable(arity, std::move(v), true);
}

Trit FunctionTable::at(const TernaryString& x) const {
  if (x.size() != arity_) throw ShapeError("point has wrong arity");
  return values_[x.index()];
}

std::vector<Trit> FunctionTable::representatives() const {
  if (arity_ == 0) throw ShapeError("no representatives on Z_3^0");
  std::vector<Trit> reps(kPow3[arity_ - 1]);
  for (Index r = 0; r < reps.size(); ++r) reps[r] = values_[3 * r];
  return reps;
}

bool is_folded(const FunctionTable& f) {
  const int n = f.arity();
  for (Index x = 0; x < f.size(); ++x) {
    for (Trit c = 1; c < 3; ++c) {
      if (f(shift_index(x, n, c)) != add_mod3(f(x), c)) return false;
    }
  }
  return true;
}

FunctionTable random_table(int arity, std::mt19937_64& rng) {
  check_arity(arity);
  std::vector<Trit> v(kPow3[arity]);
  for (auto& t : v) t = random_trit(rng);
  return FunctionTable(arity, std::move(v));
}

FunctionTable random_folded_table(int arity, std::mt19937_64& rng) {
  check_arity(arity);
  if (arity == 0) throw ShapeError("no folded function exists on Z_3^0");
  std::vector<Trit> reps(kPow3[arity - 1]);
  for (auto& t : reps) t = random_trit(rng);
  return FunctionTable::fold_extend(arity, reps);
}

}  // namespace tritcert
