#pragma once

// Scalar fields on R^n and the Euclidean Laplacian / bi-Laplacian computed
// from jet sweeps.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "biharm/jets.hpp"

namespace biharm {

using Point = std::vector<double>;

/// An evaluable map R^n -> R, usable in plain-real, Jet1 and Jet2 arithmetic.
///
/// Construct from any callable that accepts `std::span<const T>` for the three
/// scalar kinds, typically a generic lambda.
class ScalarField {
 public:
  ScalarField() = default;

  template <class F>
  ScalarField(int dim, F f)
      : dim_(dim),
        impl_(std::make_shared<Model<F>>(std::move(f))) {}

  int dim() const { return dim_; }
  explicit operator bool() const { return impl_ != nullptr; }

  double operator()(std::span<const double> x) const { check(x.size()); return impl_->eval(x); }
  Jet1 operator()(std::span<const Jet1> x) const { check(x.size()); return impl_->eval(x); }
  Jet2 operator()(std::span<const Jet2> x) const { check(x.size()); return impl_->eval(x); }

  /// Generic entry point for templated callers.
  template <class T>
  T eval(std::span<const T> x) const { return (*this)(x); }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual double eval(std::span<const double>) const = 0;
    virtual Jet1 eval(std::span<const Jet1>) const = 0;
    virtual Jet2 eval(std::span<const Jet2>) const = 0;
  };
  template <class F>
  struct Model final : Concept {
    explicit Model(F fn) : f(std::move(fn)) {}
    double eval(std::span<const double> x) const override { return static_cast<double>(f(x)); }
    Jet1 eval(std::span<const Jet1> x) const override { return Jet1(f(x)); }
    Jet2 eval(std::span<const Jet2> x) const override { return Jet2(f(x)); }
    F f;
  };

  void check(std::size_t n) const {
    if (!impl_) throw Error("evaluation of an empty ScalarField");
    if (static_cast<int>(n) != dim_)
      throw DomainError("point has dimension " + std::to_string(n) + ", field expects " +
                        std::to_string(dim_));
  }

  int dim_ = 0;
  std::shared_ptr<const Concept> impl_;
};

/// A function of one real variable, usable in the three scalar kinds.
class UnivariateFn {
 public:
  UnivariateFn() = default;

  template <class F>
  explicit UnivariateFn(F f) : impl_(std::make_shared<Model<F>>(std::move(f))) {}

  explicit operator bool() const { return impl_ != nullptr; }
  double operator()(double x) const { return impl_->eval(x); }
  Jet1 operator()(const Jet1& x) const { return impl_->eval(x); }
  Jet2 operator()(const Jet2& x) const { return impl_->eval(x); }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual double eval(double) const = 0;
    virtual Jet1 eval(const Jet1&) const = 0;
    virtual Jet2 eval(const Jet2&) const = 0;
  };
  template <class F>
  struct Model final : Concept {
    explicit Model(F fn) : f(std::move(fn)) {}
    double eval(double x) const override { return static_cast<double>(f(x)); }
    Jet1 eval(const Jet1& x) const override { return Jet1(f(x)); }
    Jet2 eval(const Jet2& x) const override { return Jet2(f(x)); }
    F f;
  };
  std::shared_ptr<const Concept> impl_;
};

template <class T>
T squared_norm(std::span<const T> x) {
  T s(0.0);
  for (const auto& xi : x) s = s + xi * xi;
  return s;
}

template <class T>
T norm(std::span<const T> x) {
  return sqrt(squared_norm(x));
}

inline double norm(const Point& x) { return norm(std::span<const double>(x)); }

/// Linear combination sum_i coeffs[i] * fields[i] (all of the same dimension).
inline ScalarField linear_combination(std::vector<double> coeffs, std::vector<ScalarField> fields) {
  if (coeffs.size() != fields.size() || fields.empty())
    throw DomainError("linear_combination: size mismatch");
  const int dim = fields.front().dim();
  return ScalarField(dim, [coeffs = std::move(coeffs), fields = std::move(fields)](auto x) {
    using T = typename decltype(x)::value_type;
    T acc(0.0);
    for (std::size_t i = 0; i < fields.size(); ++i) acc = acc + fields[i](x) * coeffs[i];
    return acc;
  });
}

inline ScalarField scaled(const ScalarField& f, double alpha) {
  return linear_combination({alpha}, {f});
}

// ---------------------------------------------------------------------------
// Euclidean differential operators
// ---------------------------------------------------------------------------

namespace detail {

inline void require_finite_result(double v, const char* op) {
  if (!std::isfinite(v)) throw NumericError(std::string(op) + ": non-finite jet coefficient");
}

inline Jet1 sweep_axis(const ScalarField& f, std::span<const double> x, std::span<const double> v) {
  std::vector<Jet1> arg(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) arg[i] = Jet1(x[i], v[i], 0, 0, 0);
  Jet1 r = f(std::span<const Jet1>(arg));
  if (!all_finite(r)) throw NumericError("non-finite jet coefficient");
  return r;
}

}  // namespace detail

/// [f(x), D_v f, .., D_v^order f] along the direction v.
inline std::vector<double> directional_derivatives(const ScalarField& f, std::span<const double> x,
                                                   std::span<const double> v, int order) {
  if (order < 1 || order > 4) throw DomainError("directional_derivatives: order must be in 1..4");
  if (static_cast<int>(x.size()) != f.dim() || v.size() != x.size())
    throw DomainError("directional_derivatives: dimension mismatch");
  const Jet1 r = detail::sweep_axis(f, x, v);
  return std::vector<double>(r.d.begin(), r.d.begin() + order + 1);
}

/// Sum of pure second partials, one Jet1 sweep per axis.
inline double euclidean_laplacian(const ScalarField& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dim()) throw DomainError("euclidean_laplacian: dimension mismatch");
  std::vector<double> e(x.size(), 0.0);
  double sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    e[i] = 1.0;
    sum += detail::sweep_axis(f, x, e)[2];
    e[i] = 0.0;
  }
  detail::require_finite_result(sum, "euclidean_laplacian");
  return sum;
}

struct LaplacianPair {
  double laplacian = 0;
  double bilaplacian = 0;
};

/// Laplacian and bi-Laplacian from one set of sweeps: pure fourth partials
/// from per-axis Jet1 order 4, mixed d^4/dx_i^2 dx_j^2 from Jet2 over
/// unordered axis pairs.
inline LaplacianPair euclidean_laplacian_pair(const ScalarField& f, std::span<const double> x) {
  const std::size_t n = x.size();
  if (static_cast<int>(n) != f.dim()) throw DomainError("euclidean_bilaplacian: dimension mismatch");
  LaplacianPair out;
  std::vector<Jet1> line(n);
  for (std::size_t i = 0; i < n; ++i) line[i] = Jet1(x[i]);
  for (std::size_t i = 0; i < n; ++i) {
    line[i] = Jet1::variable(x[i]);
    const Jet1 r = f(std::span<const Jet1>(line));
    if (!all_finite(r)) throw NumericError("euclidean_bilaplacian: non-finite jet coefficient");
    out.laplacian += r[2];
    out.bilaplacian += r[4];
    line[i] = Jet1(x[i]);
  }
  std::vector<Jet2> arg(n);
  for (std::size_t i = 0; i < n; ++i) arg[i] = Jet2(x[i]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      arg[i] = Jet2::linear(x[i], 1.0, 0.0);
      arg[j] = Jet2::linear(x[j], 0.0, 1.0);
      const Jet2 r = f(std::span<const Jet2>(arg));
      if (!all_finite(r)) throw NumericError("euclidean_bilaplacian: non-finite jet coefficient");
      out.bilaplacian += 2.0 * r(2, 2);
      arg[i] = Jet2(x[i]);
      arg[j] = Jet2(x[j]);
    }
  }
  detail::require_finite_result(out.laplacian, "euclidean_laplacian");
  detail::require_finite_result(out.bilaplacian, "euclidean_bilaplacian");
  return out;
}

inline double euclidean_bilaplacian(const ScalarField& f, std::span<const double> x) {
  return euclidean_laplacian_pair(f, x).bilaplacian;
}

}  // namespace biharm
