#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lis/extfloat.hpp"
#include "lis/precision.hpp"

namespace lis {

/// Dense row-major matrix.
template <typename Real>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Real(0.0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Real(1.0);
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Real& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const Real& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<Real> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::span<const Real> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Real> data_;
};

/// Complex vector stored as separate real and imaginary parts so that it
/// works with any Real, including ExtFloat.
template <typename Real>
struct BasicComplexVector {
  std::vector<Real> re;
  std::vector<Real> im;

  BasicComplexVector() = default;
  explicit BasicComplexVector(std::size_t n) : re(n, Real(0.0)), im(n, Real(0.0)) {}

  [[nodiscard]] std::size_t size() const { return re.size(); }
  [[nodiscard]] std::complex<double> at(std::size_t n) const { return {to_double(re[n]), to_double(im[n])}; }
  void set(std::size_t n, const Real& real, const Real& imag) {
    re[n] = real;
    im[n] = imag;
  }
};

using ComplexVector = BasicComplexVector<double>;

/// Builds a ComplexVector from std::complex entries.
ComplexVector make_complex_vector(std::span<const std::complex<double>> values);
/// Widens to extended precision (exact).
BasicComplexVector<ExtFloat> to_extended(const ComplexVector& v);
/// Rounds to double.
template <typename Real>
ComplexVector to_double_vector(const BasicComplexVector<Real>& v) {
  ComplexVector out(v.size());
  for (std::size_t n = 0; n < v.size(); ++n) out.set(n, to_double(v.re[n]), to_double(v.im[n]));
  return out;
}

// Allocation-free fused updates; ExtFloat overloads round once and reuse storage.
inline void add_product(double& acc, double a, double b) { acc += a * b; }
inline void sub_product(double& acc, double a, double b) { acc -= a * b; }
inline void add_product(long double& acc, long double a, long double b) { acc += a * b; }
inline void sub_product(long double& acc, long double a, long double b) { acc -= a * b; }
inline void add_product(ExtFloat& acc, const ExtFloat& a, const ExtFloat& b) { acc.add_product(a, b); }
inline void sub_product(ExtFloat& acc, const ExtFloat& a, const ExtFloat& b) { acc.sub_product(a, b); }

/// Σ x_n y_n.
template <typename Real>
Real dot(std::span<const Real> x, std::span<const Real> y) {
  assert(x.size() == y.size());
  Real acc = Real(0.0);
  for (std::size_t n = 0; n < x.size(); ++n) add_product(acc, x[n], y[n]);
  return acc;
}

/// y = A x for real A and real x.
template <typename Real>
std::vector<Real> multiply(const Matrix<Real>& a, std::span<const Real> x) {
  assert(a.cols() == x.size());
  std::vector<Real> y(a.rows(), Real(0.0));
  for (std::size_t r = 0; r < a.rows(); ++r) y[r] = dot<Real>(a.row(r), x);
  return y;
}

/// Sum of squared magnitudes, iᴴi.
template <typename Real>
Real squared_norm(const BasicComplexVector<Real>& v) {
  return dot<Real>(v.re, v.re) + dot<Real>(v.im, v.im);
}

/// iᴴ A i for real symmetric A (the imaginary cross terms cancel).
template <typename Real>
Real quadratic_form(const Matrix<Real>& a, const BasicComplexVector<Real>& v) {
  return dot<Real>(v.re, multiply(a, std::span<const Real>(v.re))) +
         dot<Real>(v.im, multiply(a, std::span<const Real>(v.im)));
}

/// Real and imaginary parts of xᴴ y.
template <typename Real>
struct InnerProduct {
  Real re;
  Real im;
  [[nodiscard]] Real squared_magnitude() const { return re * re + im * im; }
};

template <typename Real>
InnerProduct<Real> inner(const BasicComplexVector<Real>& x, const BasicComplexVector<Real>& y) {
  // conj(x)·y = (xr - j xi)(yr + j yi)
  Real re = dot<Real>(x.re, y.re) + dot<Real>(x.im, y.im);
  Real im = dot<Real>(x.re, y.im) - dot<Real>(x.im, y.re);
  return {std::move(re), std::move(im)};
}

}  // namespace lis
