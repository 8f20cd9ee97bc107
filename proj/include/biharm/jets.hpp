#pragma once

/**
 * @file jets.hpp
 * @brief Truncated-Taylor arithmetic for exact-to-roundoff derivatives.
 *
 * Two jet kinds are provided:
 *
 *  - Jet1: a function of one real parameter t, carrying d^n f/dt^n for n = 0..4.
 *  - Jet2: a function of two real parameters (s, t), carrying the mixed partials
 *          d^{i+j} f / ds^i dt^j for 0 <= i, j <= 2.
 *
 * Both store RAW derivatives, never Taylor coefficients. The only place where
 * factorials enter is the Leibniz rule in operator* (binomial weights) and the
 * 1/n! weights of the power series in compose(). Everything else reads
 * derivatives straight off the coefficient arrays.
 */

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace biharm {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field evaluation hit a singularity: non-finite value, division by ~0,
/// or an elementary function outside its domain.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Input outside the declared domain of an operator or object.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// |denominator| at or below this is treated as a division by zero.
inline constexpr double kDivisionFloor = 1e-300;

// ---------------------------------------------------------------------------
// Jet1
// ---------------------------------------------------------------------------

struct Jet1 {
  static constexpr int kOrder = 4;
  std::array<double, 5> d{};  // d[n] = f^{(n)}

  constexpr Jet1() = default;
  constexpr Jet1(double value) : d{value, 0, 0, 0, 0} {}  // NOLINT: constants convert implicitly
  constexpr Jet1(double d0, double d1, double d2, double d3, double d4) : d{d0, d1, d2, d3, d4} {}

  /// The identity jet t -> t at t = x.
  static constexpr Jet1 variable(double x) { return {x, 1.0, 0.0, 0.0, 0.0}; }

  constexpr double value() const { return d[0]; }
  constexpr double operator[](int n) const { return d[static_cast<std::size_t>(n)]; }
  constexpr bool is_constant() const { return d[1] == 0 && d[2] == 0 && d[3] == 0 && d[4] == 0; }

  /// Derivative jet: (f', f'', f''', f'''', 0). The top entry is unknown, so
  /// the result is only valid to order 3. Callers track the lost order.
  constexpr Jet1 derivative() const { return {d[1], d[2], d[3], d[4], 0.0}; }

  Jet1& operator+=(const Jet1& o) { for (int i = 0; i < 5; ++i) d[i] += o.d[i]; return *this; }
  Jet1& operator-=(const Jet1& o) { for (int i = 0; i < 5; ++i) d[i] -= o.d[i]; return *this; }
  Jet1& operator*=(double s) { for (auto& x : d) x *= s; return *this; }
};

inline Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
inline Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
inline Jet1 operator-(Jet1 a) { a *= -1.0; return a; }
inline Jet1 operator*(Jet1 a, double s) { return a *= s; }
inline Jet1 operator*(double s, Jet1 a) { return a *= s; }

inline Jet1 operator*(const Jet1& a, const Jet1& b) {
  if (b.is_constant()) return a * b.d[0];
  if (a.is_constant()) return b * a.d[0];
  const auto& f = a.d;
  const auto& g = b.d;
  return {f[0] * g[0],
          f[1] * g[0] + f[0] * g[1],
          f[2] * g[0] + 2 * f[1] * g[1] + f[0] * g[2],
          f[3] * g[0] + 3 * f[2] * g[1] + 3 * f[1] * g[2] + f[0] * g[3],
          f[4] * g[0] + 4 * f[3] * g[1] + 6 * f[2] * g[2] + 4 * f[1] * g[3] + f[0] * g[4]};
}

// ---------------------------------------------------------------------------
// Jet2
// ---------------------------------------------------------------------------

struct Jet2 {
  std::array<double, 9> c{};  // c[3*i + j] = d^{i+j} f / ds^i dt^j

  constexpr Jet2() = default;
  constexpr Jet2(double value) : c{value, 0, 0, 0, 0, 0, 0, 0, 0} {}  // NOLINT

  /// Coordinate x0 + a*s + b*t.
  static constexpr Jet2 linear(double x0, double a, double b) {
    Jet2 j(x0);
    j.c[3] = a;
    j.c[1] = b;
    return j;
  }

  constexpr double value() const { return c[0]; }
  constexpr double operator()(int i, int j) const { return c[static_cast<std::size_t>(3 * i + j)]; }
  double& at(int i, int j) { return c[static_cast<std::size_t>(3 * i + j)]; }
  constexpr bool is_constant() const {
    for (std::size_t k = 1; k < 9; ++k)
      if (c[k] != 0) return false;
    return true;
  }

  Jet2& operator+=(const Jet2& o) { for (std::size_t i = 0; i < 9; ++i) c[i] += o.c[i]; return *this; }
  Jet2& operator-=(const Jet2& o) { for (std::size_t i = 0; i < 9; ++i) c[i] -= o.c[i]; return *this; }
  Jet2& operator*=(double s) { for (auto& x : c) x *= s; return *this; }
};

inline Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
inline Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
inline Jet2 operator-(Jet2 a) { a *= -1.0; return a; }
inline Jet2 operator*(Jet2 a, double s) { return a *= s; }
inline Jet2 operator*(double s, Jet2 a) { return a *= s; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  if (b.is_constant()) return a * b.c[0];
  if (a.is_constant()) return b * a.c[0];
  static constexpr double binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
  Jet2 r(0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = 0;
      for (int p = 0; p <= i; ++p)
        for (int q = 0; q <= j; ++q)
          acc += binom[i][p] * binom[j][q] * a(p, q) * b(i - p, j - q);
      r.at(i, j) = acc;
    }
  return r;
}

// ---------------------------------------------------------------------------
// Shared scalar helpers (double overloads let generic code call these
// unqualified inside namespace biharm)
// ---------------------------------------------------------------------------

inline double value_of(double x) { return x; }
inline double value_of(const Jet1& x) { return x.value(); }
inline double value_of(const Jet2& x) { return x.value(); }

/// f(u) given f and its first four derivatives at u.value(). The series
/// sum_n f^{(n)}(u0) (u - u0)^n / n! terminates at n = 4 in both jet rings.
template <class J>
J compose(const J& u, const std::array<double, 5>& f) {
  for (double v : f)
    if (!std::isfinite(v)) throw NumericError("elementary function evaluated at a singularity");
  J delta = u;
  delta -= J(u.value());
  J result(f[0]);
  J power = delta;
  static constexpr double inv_fact[5] = {1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0};
  for (int n = 1; n <= 4; ++n) {
    result += power * (f[static_cast<std::size_t>(n)] * inv_fact[n]);
    if (n < 4) power = power * delta;
  }
  return result;
}

namespace detail {

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw NumericError(std::string(what) + ": non-finite argument");
}

inline std::array<double, 5> recip_derivs(double x) {
  if (std::abs(x) <= kDivisionFloor) throw NumericError("division by a jet with zero value part");
  const double r = 1.0 / x;
  const double r2 = r * r;
  return {r, -r2, 2 * r2 * r, -6 * r2 * r2, 24 * r2 * r2 * r};
}

}  // namespace detail

inline double recip(double x) {
  if (std::abs(x) <= kDivisionFloor) throw NumericError("division by zero");
  return 1.0 / x;
}
template <class J> J recip(const J& x) { return compose(x, detail::recip_derivs(x.value())); }

inline Jet1 operator/(const Jet1& a, const Jet1& b) { return a * recip(b); }
inline Jet1 operator/(const Jet1& a, double b) { return a * recip(b); }
inline Jet1 operator/(double a, const Jet1& b) { return recip(b) * a; }
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * recip(b); }
inline Jet2 operator/(const Jet2& a, double b) { return a * recip(b); }
inline Jet2 operator/(double a, const Jet2& b) { return recip(b) * a; }

inline Jet1 operator+(Jet1 a, double b) { a.d[0] += b; return a; }
inline Jet1 operator+(double b, Jet1 a) { a.d[0] += b; return a; }
inline Jet1 operator-(Jet1 a, double b) { a.d[0] -= b; return a; }
inline Jet1 operator-(double b, const Jet1& a) { return -a + b; }
inline Jet2 operator+(Jet2 a, double b) { a.c[0] += b; return a; }
inline Jet2 operator+(double b, Jet2 a) { a.c[0] += b; return a; }
inline Jet2 operator-(Jet2 a, double b) { a.c[0] -= b; return a; }
inline Jet2 operator-(double b, const Jet2& a) { return -a + b; }

// ---------------------------------------------------------------------------
// Elementary functions. Each jet overload supplies f, f', .., f'''' at the
// value part and defers to compose().
// ---------------------------------------------------------------------------

#define BIHARM_DEFINE_JET_FUNCTION(name)                                  \
  inline Jet1 name(const Jet1& x) { return compose(x, name##_derivs(x.value())); } \
  inline Jet2 name(const Jet2& x) { return compose(x, name##_derivs(x.value())); }

namespace detail {

inline std::array<double, 5> exp_derivs(double x) {
  const double e = std::exp(x);
  return {e, e, e, e, e};
}
inline std::array<double, 5> log_derivs(double x) {
  if (!(x > 0)) throw NumericError("log of a non-positive value");
  const double r = 1.0 / x;
  return {std::log(x), r, -r * r, 2 * r * r * r, -6 * r * r * r * r};
}
inline std::array<double, 5> sqrt_derivs(double x) {
  if (!(x > 0)) throw NumericError("sqrt at a non-positive value");
  const double s = std::sqrt(x);
  const double r = 1.0 / x;
  return {s, 0.5 / s, -0.25 / s * r, 0.375 / s * r * r, -0.9375 / s * r * r * r};
}
inline std::array<double, 5> sin_derivs(double x) {
  const double s = std::sin(x), c = std::cos(x);
  return {s, c, -s, -c, s};
}
inline std::array<double, 5> cos_derivs(double x) {
  const double s = std::sin(x), c = std::cos(x);
  return {c, -s, -c, s, c};
}
inline std::array<double, 5> sinh_derivs(double x) {
  const double s = std::sinh(x), c = std::cosh(x);
  return {s, c, s, c, s};
}
inline std::array<double, 5> cosh_derivs(double x) {
  const double s = std::sinh(x), c = std::cosh(x);
  return {c, s, c, s, c};
}
inline std::array<double, 5> atan_derivs(double x) {
  const double q = 1.0 / (1.0 + x * x);
  return {std::atan(x), q, -2 * x * q * q, (6 * x * x - 2) * q * q * q,
          24 * x * (1 - x * x) * q * q * q * q};
}
inline std::array<double, 5> atanh_derivs(double x) {
  if (!(std::abs(x) < 1)) throw NumericError("atanh outside (-1, 1)");
  const double q = 1.0 / (1.0 - x * x);
  return {std::atanh(x), q, 2 * x * q * q, (2 + 6 * x * x) * q * q * q,
          (24 * x + 24 * x * x * x) * q * q * q * q};
}
inline std::array<double, 5> asin_derivs(double x) {
  if (!(std::abs(x) < 1)) throw NumericError("asin/acos outside (-1, 1)");
  const double q = 1.0 - x * x;
  const double s = 1.0 / std::sqrt(q);  // q^{-1/2}
  const double s3 = s / q, s5 = s3 / q, s7 = s5 / q;
  return {std::asin(x), s, x * s3, (1 + 2 * x * x) * s5, (9 * x + 6 * x * x * x) * s7};
}
inline std::array<double, 5> pow_derivs(double x, double a) {
  if (!(x > 0)) throw NumericError("real power of a non-positive value");
  const double p = std::pow(x, a - 4);
  return {p * x * x * x * x, a * p * x * x * x, a * (a - 1) * p * x * x, a * (a - 1) * (a - 2) * p * x,
          a * (a - 1) * (a - 2) * (a - 3) * p};
}

}  // namespace detail

using detail::exp_derivs, detail::log_derivs, detail::sqrt_derivs, detail::sin_derivs,
    detail::cos_derivs, detail::sinh_derivs, detail::cosh_derivs, detail::atan_derivs,
    detail::atanh_derivs, detail::asin_derivs;

BIHARM_DEFINE_JET_FUNCTION(exp)
BIHARM_DEFINE_JET_FUNCTION(log)
BIHARM_DEFINE_JET_FUNCTION(sqrt)
BIHARM_DEFINE_JET_FUNCTION(sin)
BIHARM_DEFINE_JET_FUNCTION(cos)
BIHARM_DEFINE_JET_FUNCTION(sinh)
BIHARM_DEFINE_JET_FUNCTION(cosh)
BIHARM_DEFINE_JET_FUNCTION(atan)
BIHARM_DEFINE_JET_FUNCTION(atanh)
BIHARM_DEFINE_JET_FUNCTION(asin)

#undef BIHARM_DEFINE_JET_FUNCTION

inline double exp(double x) { return std::exp(x); }
inline double log(double x) {
  if (!(x > 0)) throw NumericError("log of a non-positive value");
  return std::log(x);
}
inline double sqrt(double x) {
  if (x < 0) throw NumericError("sqrt of a negative value");
  return std::sqrt(x);
}
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double sinh(double x) { return std::sinh(x); }
inline double cosh(double x) { return std::cosh(x); }
inline double atan(double x) { return std::atan(x); }
inline double atanh(double x) {
  if (!(std::abs(x) < 1)) throw NumericError("atanh outside (-1, 1)");
  return std::atanh(x);
}
inline double asin(double x) {
  if (!(std::abs(x) <= 1)) throw NumericError("asin outside [-1, 1]");
  return std::asin(x);
}

template <class T> T acos(const T& x) { return std::numbers::pi / 2 - asin(x); }
template <class T> T tan(const T& x) { return sin(x) / cos(x); }
template <class T> T cot(const T& x) { return cos(x) / sin(x); }
template <class T> T tanh(const T& x) { return sinh(x) / cosh(x); }
template <class T> T coth(const T& x) { return cosh(x) / sinh(x); }
inline double tan(double x) { return std::tan(x); }
inline double tanh(double x) { return std::tanh(x); }
inline double cot(double x) { return std::cos(x) * recip(std::sin(x)); }
inline double coth(double x) { return std::cosh(x) * recip(std::sinh(x)); }

/// Real power x^a with x > 0.
inline double pow(double x, double a) {
  if (!(x > 0)) throw NumericError("real power of a non-positive value");
  return std::pow(x, a);
}
inline Jet1 pow(const Jet1& x, double a) { return compose(x, detail::pow_derivs(x.value(), a)); }
inline Jet2 pow(const Jet2& x, double a) { return compose(x, detail::pow_derivs(x.value(), a)); }

/// Integer power by repeated squaring; valid for any sign of x.
template <class T>
T ipow(const T& x, int n) {
  if (n < 0) return recip(ipow(x, -n));
  T result(1.0);
  T base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// Polar angle atan2(y, x); derivatives from atan of the better-conditioned
/// quotient, value from std::atan2.
inline double atan2(double y, double x) { return std::atan2(y, x); }
template <class J>
J atan2(const J& y, const J& x) {
  J result = std::abs(x.value()) >= std::abs(y.value()) ? atan(y / x) : -atan(x / y);
  result -= J(result.value());
  result += J(std::atan2(y.value(), x.value()));
  return result;
}

inline bool all_finite(double x) { return std::isfinite(x); }
inline bool all_finite(const Jet1& x) {
  for (double v : x.d)
    if (!std::isfinite(v)) return false;
  return true;
}
inline bool all_finite(const Jet2& x) {
  for (double v : x.c)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace biharm
