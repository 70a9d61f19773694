#include "tritcert/rational.hpp"

#include <limits>


#include "tritcert/error.hpp"

namespace tritcert {

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool is_integer_text(const std::string& t, bool allow_sign) {
  std::size_t i = (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto cut = text.find('/');
  const bool ok = cut == std::string::npos
                      ? is_integer_text(text, true)
                      : is_integer_text(text.substr(0, cut), true) && is_integer_text(text.substr(cut + 1), false);
  if (!ok) throw ParseError("not a rational: '" + text + "'");
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("not a rational: '" + text + "'");
  }
}

ScaledWeights scale_to_common_denominator(std::span<const Rational> weights) {
  constexpr std::int64_t kLimit = std::int64_t{1} << 62;
  BigInt lcm = 1;
  for (const auto& w : weights) {
    const BigInt den = boost::multiprecision::denominator(w);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    if (lcm > kLimit) throw CapacityError("common weight denominator exceeds 62 bits");
  }
  ScaledWeights out;
  out.denominator = lcm.convert_to<std::int64_t>();
  out.numerators.reserve(weights.size());
  BigInt total = 0;
  for (const auto& w : weights) {
    const BigInt scaled = boost::multiprecision::numerator(w) * (lcm / boost::multiprecision::denominator(w));
    total += scaled;
    if (scaled > kLimit || total > kLimit) throw CapacityError("scaled weight exceeds 62 bits");
    out.numerators.push_back(scaled.convert_to<std::int64_t>());
  }
  return out;
}

}  // namespace tritcert
