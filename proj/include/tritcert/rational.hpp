#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tritcert {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& r);

/// Parses "a/b" or "a".
Rational parse_rational(const std::string& text);

// Weights brought to a common denominator so hot loops can sum int64s.
struct ScaledWeights {
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;

  Rational value(std::int64_t total) const {
    return make_rational(total, denominator);
  }
};

/// Throws CapacityError when the common denominator or any numerator
/// does not fit in 62 bits.
ScaledWeights scale_to_common_denominator(std::span<const Rational> weights);

}  // namespace tritcert
