#pragma once
// Exact rational arithmetic for degrees, rewards, probabilities and costs.
// Text form is always "p/q" (or "p" when q == 1); parsing also accepts
// plain decimals like "0.25" which are exact in base 10.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "cogsyn/error.hpp"

namespace cogsyn {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string format_rational(const Rational& q) {
  BigInt num = numerator(q), den = denominator(q);
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

// Accepts "p/q", integers, and finite decimals ("-3", "1/3", "0.25").
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error(Errc::bad_input, "empty rational literal");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw Error(Errc::bad_input, "zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
    if (tail.find_first_not_of("0123456789") != std::string::npos)
      throw Error(Errc::bad_input, "bad decimal '" + text + "'");
    BigInt scale = 1;
    for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
    BigInt whole(head.empty() || head == "-" ? head + "0" : head);
    BigInt frac = tail.empty() ? BigInt(0) : BigInt(tail);
    bool neg = !head.empty() && head[0] == '-';
    BigInt num = whole * scale + (neg ? -frac : frac);
    return Rational(num, scale);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(Errc::bad_input, "bad rational literal '" + text + "'");
  }
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Closed interval [lo, hi] over rationals; used for degree and budget windows.
struct RatInterval {
  Rational lo{0};
  Rational hi{1};
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

// Half-open cell (lo, hi] used by the stuckness partition.
struct HalfOpenCell {
  Rational lo{0};
  Rational hi{1};
  bool contains(const Rational& x) const { return lo < x && x <= hi; }
};

}  // namespace cogsyn
