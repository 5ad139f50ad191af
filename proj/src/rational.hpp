#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace pcs {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

// Best rational approximation of x with denominator <= max_den, by
// continued-fraction expansion. Used only when rendering reports; all
// internal comparisons stay in floating point.
inline Rational approx_rational(double x, std::int64_t max_den = 1000000) {
  Rational r;
  if (!std::isfinite(x)) return {0, 0};
  const bool neg = x < 0;
  double v = neg ? -x : x;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(v);
    if (fl > 9e18) break;
    const auto a = static_cast<std::int64_t>(fl);
    if (q1 != 0 && a > (max_den - q0) / q1) break;  // next denominator too big
    const std::int64_t p2 = a * p1 + p0;
    const std::int64_t q2 = a * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = v - fl;
    if (frac < 1e-12) break;
    v = 1.0 / frac;
  }
  r.num = neg ? -p1 : p1;
  r.den = q1;
  return r;
}

inline std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace pcs
