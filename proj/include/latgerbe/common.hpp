#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace latgerbe {

using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;
using complexd = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// error taxonomy shared with the CLI exit-code contract:
//   config_error, frame_error  -> exit 2
//   guard_error, truncation_error -> exit 3
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct config_error : error {
  using error::error;
};
struct frame_error : error {
  using error::error;
};
struct guard_error : error {
  using error::error;
};
struct truncation_error : error {
  using error::error;
};

using vec3 = std::array<double, 3>;
using ivec3 = std::array<long long, 3>;

inline vec3 operator+(const vec3& a, const vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline vec3 operator-(const vec3& a, const vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline vec3 operator*(double t, const vec3& a) { return {t * a[0], t * a[1], t * a[2]}; }
inline ivec3 operator+(const ivec3& a, const ivec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline ivec3 operator-(const ivec3& a, const ivec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline vec3 operator-(const vec3& a, const ivec3& n) {
  return {a[0] - double(n[0]), a[1] - double(n[1]), a[2] - double(n[2])};
}
inline vec3 operator+(const vec3& a, const ivec3& n) {
  return {a[0] + double(n[0]), a[1] + double(n[1]), a[2] + double(n[2])};
}

inline double norm2(const vec3& b) { return std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]); }

struct Mat2 {
  std::array<complexd, 4> m{};  // row major

  static Mat2 zero() { return {}; }
  static Mat2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }

  complexd& operator()(int r, int c) { return m[2 * r + c]; }
  complexd operator()(int r, int c) const { return m[2 * r + c]; }

  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
  }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
  }
  friend Mat2 operator*(complexd c, const Mat2& a) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = c * a.m[i];
    return r;
  }
  complexd trace() const { return m[0] + m[3]; }
};

inline double frobenius(const Mat2& a) {
  double s = 0;
  for (const complexd& c : a.m) s += std::norm(c);
  return std::sqrt(s);
}

inline double dot(const vec3& a, const vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline long long dot(const ivec3& a, const ivec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// det[r0; r1; r2] with rows as listed
template <class R0, class R1, class R2>
inline auto det3(const R0& a, const R1& n, const R2& m)
    -> decltype(a[0] * (n[1] * m[2] - n[2] * m[1])) {
  return a[0] * (n[1] * m[2] - n[2] * m[1]) - a[1] * (n[0] * m[2] - n[2] * m[0]) +
         a[2] * (n[0] * m[1] - n[1] * m[0]);
}

inline rational rational_from_double(double x) {
  // every finite double is a dyadic rational
  if (!std::isfinite(x)) throw config_error("rational_from_double: non-finite input");
  if (x == 0.0) return rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  long long m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  rational r(m);
  if (exp >= 0)
    r *= rational(bigint(1) << exp);
  else
    r /= rational(bigint(1) << (-exp));
  return r;
}

// fractional part in [0, 1)
inline rational frac(const rational& r) {
  bigint num = boost::multiprecision::numerator(r);
  bigint den = boost::multiprecision::denominator(r);
  bigint q = num / den;  // truncates toward zero
  rational f = r - rational(q);
  if (f < 0) f += 1;
  return f;
}

inline complexd unit_phase(const rational& turns) {
  double t = static_cast<double>(frac(turns));
  return std::polar(1.0, two_pi * t);
}

inline std::string rational_to_string(const rational& r) {
  bigint num = boost::multiprecision::numerator(r);
  bigint den = boost::multiprecision::denominator(r);
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

inline std::optional<long long> rational_to_int(const rational& r) {
  if (boost::multiprecision::denominator(r) == 1)
    return static_cast<long long>(boost::multiprecision::numerator(r));
  return std::nullopt;
}

}  // namespace latgerbe
