#pragma once

/**
 * @file harmonics.hpp
 * @brief Homogeneous polynomials in n variables, their exact Laplacian, and
 *        bases of harmonic homogeneous polynomials (solid spherical harmonics).
 *
 * Polynomial coefficients are doubles, but every operation here is exact as
 * long as coefficients are integers below 2^53: the monomial Laplacian only
 * multiplies by small integers and adds.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "biharm/field.hpp"
#include "biharm/jets.hpp"

namespace biharm {

using Exponents = std::vector<int>;

class HomogeneousPolynomial {
 public:
  HomogeneousPolynomial(int n, int k) : n_(n), k_(k) {
    if (n < 1) throw DomainError("polynomial needs at least one variable");
    if (k < 0) throw DomainError("polynomial degree must be >= 0");
  }

  /// x_1^{e_1} ... x_n^{e_n} with coefficient 1.
  static HomogeneousPolynomial monomial(Exponents e) {
    const int k = std::accumulate(e.begin(), e.end(), 0);
    HomogeneousPolynomial p(static_cast<int>(e.size()), k);
    p.add_term(std::move(e), 1.0);
    return p;
  }

  /// |x|^2 in n variables.
  static HomogeneousPolynomial radius_squared(int n) {
    HomogeneousPolynomial p(n, 2);
    for (int i = 0; i < n; ++i) {
      Exponents e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(i)] = 2;
      p.add_term(e, 1.0);
    }
    return p;
  }

  static HomogeneousPolynomial constant(int n, double c) {
    HomogeneousPolynomial p(n, 0);
    p.add_term(Exponents(static_cast<std::size_t>(n), 0), c);
    return p;
  }

  int variables() const { return n_; }
  int degree() const { return k_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
  }

  /// Adds c * x^e. Entries that cancel to exactly zero are removed.
  HomogeneousPolynomial& add_term(Exponents e, double c) {
    if (static_cast<int>(e.size()) != n_) throw DomainError("exponent vector has wrong length");
    int total = 0;
    for (int a : e) {
      if (a < 0) throw DomainError("negative exponent");
      total += a;
    }
    if (total != k_)
      throw DomainError("monomial of degree " + std::to_string(total) + " added to a degree-" +
                        std::to_string(k_) + " homogeneous polynomial");
    if (c == 0.0) return *this;
    auto [it, inserted] = terms_.emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
    return *this;
  }

  HomogeneousPolynomial& operator+=(const HomogeneousPolynomial& o) {
    require_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  HomogeneousPolynomial& operator-=(const HomogeneousPolynomial& o) {
    require_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  HomogeneousPolynomial& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend HomogeneousPolynomial operator+(HomogeneousPolynomial a, const HomogeneousPolynomial& b) { return a += b; }
  friend HomogeneousPolynomial operator-(HomogeneousPolynomial a, const HomogeneousPolynomial& b) { return a -= b; }
  friend HomogeneousPolynomial operator*(HomogeneousPolynomial a, double s) { return a *= s; }
  friend HomogeneousPolynomial operator*(double s, HomogeneousPolynomial a) { return a *= s; }
  friend bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.terms_ == b.terms_;
  }

  /// Exact partial derivative with respect to variable i (0-based).
  HomogeneousPolynomial partial(int i) const {
    HomogeneousPolynomial out(n_, std::max(k_ - 1, 0));
    if (k_ == 0) return out;
    for (const auto& [e, c] : terms_) {
      const int a = e[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      Exponents d = e;
      --d[static_cast<std::size_t>(i)];
      out.add_term(std::move(d), c * a);
    }
    return out;
  }

  template <class T>
  T evaluate(std::span<const T> x) const {
    if (static_cast<int>(x.size()) != n_) throw DomainError("polynomial evaluated at a point of wrong dimension");
    // Coordinates without a perturbation contribute plain-real factors; only
    // the perturbed ones go through jet multiplication.
    T sum(0.0);
    for (const auto& [e, c] : terms_) {
      double scalar = c;
      T prod(1.0);
      bool have_jet = false;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if constexpr (std::is_same_v<T, double>) {
          scalar *= ipow(x[i], e[i]);
        } else if (x[i].is_constant()) {
          scalar *= ipow(x[i].value(), e[i]);
        } else {
          const T f = ipow(x[i], e[i]);
          prod = have_jet ? prod * f : f;
          have_jet = true;
        }
      }
      if constexpr (std::is_same_v<T, double>) {
        sum += scalar;
      } else {
        sum += have_jet ? prod * scalar : T(scalar);
      }
    }
    return sum;
  }

  double operator()(std::span<const double> x) const { return evaluate(x); }

  /// The polynomial itself as a ScalarField on R^n.
  ScalarField as_field() const {
    return ScalarField(n_, [p = *this](auto x) { return p.evaluate(x); });
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s%.17g", first ? "" : " + ", c);
      s += buf;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        s += "*x" + std::to_string(i + 1);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
      }
      first = false;
    }
    return s;
  }

 private:
  void require_compatible(const HomogeneousPolynomial& o) const {
    if (o.n_ != n_ || o.k_ != k_) throw DomainError("polynomials differ in variable count or degree");
  }

  int n_;
  int k_;
  std::map<Exponents, double> terms_;
};

// JSON form: {"n": 3, "k": 2, "terms": [{"exponents": [1,1,0], "coeff": 1.0}, ...]}
inline void to_json(nlohmann::json& j, const HomogeneousPolynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exponents", e}, {"coeff", c}});
  j = {{"n", p.variables()}, {"k", p.degree()}, {"terms", terms}};
}

inline HomogeneousPolynomial polynomial_from_json(const nlohmann::json& j) {
  HomogeneousPolynomial p(j.at("n").get<int>(), j.at("k").get<int>());
  for (const auto& t : j.at("terms")) p.add_term(t.at("exponents").get<Exponents>(), t.at("coeff").get<double>());
  return p;
}

/// Exact coefficient-level Laplacian; degree drops by two (zero polynomial when k < 2).
inline HomogeneousPolynomial poly_laplacian(const HomogeneousPolynomial& p) {
  HomogeneousPolynomial out(p.variables(), std::max(p.degree() - 2, 0));
  if (p.degree() < 2) return out;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 2) continue;
      Exponents d = e;
      d[i] -= 2;
      out.add_term(std::move(d), c * e[i] * (e[i] - 1));
    }
  }
  return out;
}

/// Eigenvalue of -Delta on S^{n-1} for degree-k spherical harmonics in n variables.
constexpr double sphere_eigenvalue(int n, int k) { return static_cast<double>(k) * (n + k - 2); }

/// A harmonic homogeneous polynomial together with its eigenvalue on S^{n-1}.
class SphericalHarmonic {
 public:
  /// Accepts Laplacians that vanish up to rounding in the coefficients.
  explicit SphericalHarmonic(HomogeneousPolynomial p) : poly_(std::move(p)) {
    double scale = 0, lap = 0;
    for (const auto& [e, c] : poly_.terms()) scale += std::abs(c);
    const HomogeneousPolynomial laplacian = poly_laplacian(poly_);
    for (const auto& [e, c] : laplacian.terms()) lap = std::max(lap, std::abs(c));
    const double k = poly_.degree();
    if (lap > 1e-12 * k * k * scale) throw DomainError("polynomial is not harmonic: " + poly_.to_string());
  }

  const HomogeneousPolynomial& poly() const { return poly_; }
  int variables() const { return poly_.variables(); }
  int degree() const { return poly_.degree(); }
  /// lambda with Delta_{S^{n-1}} h = -lambda h.
  double eigenvalue() const { return sphere_eigenvalue(poly_.variables(), poly_.degree()); }

  template <class T>
  T operator()(std::span<const T> x) const { return poly_.evaluate(x); }

 private:
  HomogeneousPolynomial poly_;
};

namespace detail {

/// Minimal exact rational with overflow detection; enough for the
/// structured elimination below.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
    if (n > lim || -n > lim || d > lim) throw Error("rational overflow in harmonic basis elimination");
    return {static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
  }
  friend Rational operator+(Rational a, Rational b) {
    return make(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
  }
  friend Rational operator*(Rational a, std::int64_t s) { return make(static_cast<__int128>(a.num) * s, a.den); }
  friend Rational operator/(Rational a, std::int64_t s) { return make(a.num, static_cast<__int128>(a.den) * s); }
};

inline void enumerate_exponents(int n, int k, Exponents& cur, int idx, std::vector<Exponents>& out) {
  if (idx == n - 1) {
    cur[static_cast<std::size_t>(idx)] = k;
    out.push_back(cur);
    return;
  }
  for (int a = k; a >= 0; --a) {
    cur[static_cast<std::size_t>(idx)] = a;
    enumerate_exponents(n, k - a, cur, idx + 1, out);
  }
}

}  // namespace detail

/// All exponent vectors of total degree k in n variables.
inline std::vector<Exponents> monomials(int n, int k) {
  std::vector<Exponents> out;
  Exponents cur(static_cast<std::size_t>(n), 0);
  detail::enumerate_exponents(n, k, cur, 0, out);
  return out;
}

inline long long binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  long long b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

/// dim H^k(R^n) = C(n+k-1, k) - C(n+k-3, k-2).
inline long long harmonic_dimension(int n, int k) {
  return binomial(n + k - 1, k) - (k >= 2 ? binomial(n + k - 3, k - 2) : 0);
}

/**
 * Basis of the kernel of the Laplacian on degree-k homogeneous polynomials in
 * n variables.
 *
 * The coefficient matrix of poly_laplacian has one row per degree-(k-2)
 * monomial g, and that row is the only one containing x^{g + 2e_1} with a
 * nonzero entry at a strictly larger x_1-exponent than any other column it
 * touches. Ordering the unknowns by x_1-exponent therefore puts the system in
 * echelon form: the free columns are the monomials with x_1-exponent <= 1 and
 * back substitution in exact rationals yields the null space. Each basis
 * vector is rescaled to coprime integer coefficients.
 */
inline std::vector<SphericalHarmonic> harmonic_basis(int n, int k) {
  if (n < 2) throw DomainError("harmonic_basis needs n >= 2");
  if (k < 0) throw DomainError("harmonic_basis needs k >= 0");
  using detail::Rational;

  const std::vector<Exponents> all = monomials(n, k);
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) index.emplace(all[i], i);

  std::vector<std::size_t> pivots;  // monomials with x1-exponent >= 2, ascending in that exponent
  std::vector<std::size_t> free_cols;
  for (std::size_t i = 0; i < all.size(); ++i) (all[i][0] >= 2 ? pivots : free_cols).push_back(i);
  std::stable_sort(pivots.begin(), pivots.end(),
                   [&](std::size_t a, std::size_t b) { return all[a][0] < all[b][0]; });

  // row g = alpha - 2 e_1:  sum_i (g_i + 2)(g_i + 1) c[g + 2 e_i] = 0
  struct Row {
    std::size_t pivot;
    std::int64_t pivot_weight;
    std::vector<std::pair<std::size_t, std::int64_t>> others;
  };
  std::vector<Row> rows;
  rows.reserve(pivots.size());
  for (std::size_t col : pivots) {
    Exponents g = all[col];
    g[0] -= 2;
    Row row{col, static_cast<std::int64_t>(g[0] + 2) * (g[0] + 1), {}};
    for (std::size_t i = 1; i < g.size(); ++i) {
      Exponents e = g;
      e[i] += 2;
      row.others.emplace_back(index.at(e), static_cast<std::int64_t>(g[i] + 2) * (g[i] + 1));
    }
    rows.push_back(std::move(row));
  }

  std::vector<SphericalHarmonic> basis;
  basis.reserve(free_cols.size());
  std::vector<Rational> c(all.size());
  for (std::size_t seed : free_cols) {
    std::fill(c.begin(), c.end(), Rational{});
    c[seed] = Rational{1, 1};
    for (const Row& row : rows) {
      Rational acc{};
      bool any = false;
      for (const auto& [j, w] : row.others) {
        const Rational& v = c[j];
        if (v.num == 0) continue;
        acc = acc + v * w;
        any = true;
      }
      if (any) c[row.pivot] = acc * -1 / row.pivot_weight;
    }
    std::int64_t lcm = 1;
    for (const auto& r : c)
      if (r.num != 0) lcm = std::lcm(lcm, r.den);
    std::int64_t g = 0;
    for (const auto& r : c)
      if (r.num != 0) g = std::gcd(g, r.num * (lcm / r.den));
    HomogeneousPolynomial p(n, k);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (c[i].num != 0) p.add_term(all[i], static_cast<double>(c[i].num * (lcm / c[i].den) / g));
    basis.emplace_back(std::move(p));
  }
  return basis;
}

/// p = h2 + c |x|^2 with h2 harmonic; c = trace of the quadratic form / n.
struct Degree2Split {
  SphericalHarmonic harmonic;
  double radial_coefficient;
};

inline Degree2Split decompose_degree2(const HomogeneousPolynomial& p, int n) {
  if (p.degree() != 2) throw DomainError("decompose_degree2 expects a degree-2 polynomial");
  if (p.variables() != n) throw DomainError("decompose_degree2: variable count mismatch");
  double trace = 0;
  for (int i = 0; i < n; ++i) {
    Exponents e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 2;
    trace += p.coefficient(e);
  }
  const double c = trace / n;
  return {SphericalHarmonic(p - c * HomogeneousPolynomial::radius_squared(n)), c};
}

/// Both sides of <x, grad F> = k F and of Delta |x|^alpha = alpha(alpha-1+m)|x|^{alpha-2}
/// with m = n - 1; the Laplacian side is computed with jets.
struct EulerRadialDiagnostics {
  double euler_lhs;     // <x, grad F(x)>
  double euler_rhs;     // k F(x)
  double power_lhs;     // Delta |x|^alpha (jets)
  double power_rhs;     // alpha (alpha - 1 + m) |x|^{alpha - 2}
};

inline EulerRadialDiagnostics euler_radial_identities(const HomogeneousPolynomial& p, std::span<const double> x,
                                                      double alpha) {
  const int n = p.variables();
  if (static_cast<int>(x.size()) != n) throw DomainError("euler_radial_identities: dimension mismatch");
  EulerRadialDiagnostics d{};
  for (int i = 0; i < n; ++i) d.euler_lhs += x[static_cast<std::size_t>(i)] * p.partial(i).evaluate(x);
  d.euler_rhs = p.degree() * p.evaluate(x);
  const ScalarField power(n, [alpha](auto y) { return pow(norm(y), alpha); });
  d.power_lhs = euclidean_laplacian(power, x);
  const int m = n - 1;
  d.power_rhs = alpha * (alpha - 1 + m) * std::pow(norm(std::span<const double>(x)), alpha - 2);
  return d;
}

}  // namespace biharm
