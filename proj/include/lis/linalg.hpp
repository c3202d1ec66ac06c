#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "lis/dense.hpp"
#include "lis/errors.hpp"
#include "lis/precision.hpp"

namespace lis {

inline constexpr int kJacobiMaxSweeps = 100;

/// Eigendecomposition of a real symmetric matrix.
template <typename Real>
struct SymmetricEigen {
  /// Sorted descending.
  std::vector<Real> values;
  /// Row n holds the unit eigenvector of values[n].
  Matrix<Real> vectors;
  int sweeps = 0;
};

namespace detail {

template <typename Real>
Real frobenius_norm(const Matrix<Real>& a) {
  using std::sqrt;
  Real acc = Real(0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (const auto& x : a.row(r)) add_product(acc, x, x);
  }
  return sqrt(acc);
}

template <typename Real>
Real off_diagonal_norm(const Matrix<Real>& a) {
  using std::sqrt;
  Real acc = Real(0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r != c) add_product(acc, a(r, c), a(r, c));
    }
  }
  return sqrt(acc);
}

// (x, y) <- (c x - s y, s x + c y)
template <typename Real>
void rotate(Real& x, Real& y, const Real& c, const Real& s, Real& scratch) {
  scratch = x;
  x *= c;
  sub_product(x, s, y);
  y *= c;
  add_product(y, s, scratch);
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for a real symmetric matrix.
///
/// A rotation is skipped when |a_pq| <= eps * sqrt(|a_pp a_qq|), which keeps
/// small eigenvalues accurate relative to themselves rather than to the norm.
/// Converges when a full sweep needs no rotation; throws NumericalFailure with
/// the off-diagonal norm after `max_sweeps`.
template <typename Real>
SymmetricEigen<Real> jacobi_eigen(Matrix<Real> a, int max_sweeps = kJacobiMaxSweeps) {
  using std::abs;
  using std::sqrt;
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InvalidArgument("jacobi_eigen: matrix is not square");

  Matrix<Real> v = Matrix<Real>::identity(n);
  const Real eps = RealTraits<Real>::epsilon();
  const Real floor = eps * eps * detail::frobenius_norm(a);

  Real c, s, t, theta, tau, scratch, app, aqq, apq;
  int sweep = 0;
  bool converged = n <= 1;
  while (!converged && sweep < max_sweeps) {
    ++sweep;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        apq = a(p, q);
        const Real mag = abs(apq);
        if (mag <= floor || mag <= eps * sqrt(abs(a(p, p) * a(q, q)))) {
          continue;
        }
        rotated = true;
        app = a(p, p);
        aqq = a(q, q);
        theta = (aqq - app) / (2.0 * apq);
        t = Real(1.0) / (abs(theta) + sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        c = Real(1.0) / sqrt(t * t + 1.0);
        s = t * c;

        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          detail::rotate(a(r, p), a(r, q), c, s, scratch);
          a(p, r) = a(r, p);
          a(q, r) = a(r, q);
        }
        tau = t * apq;
        a(p, p) = app - tau;
        a(q, q) = aqq + tau;
        a(p, q) = Real(0.0);
        a(q, p) = Real(0.0);

        auto vp = v.row(p);
        auto vq = v.row(q);
        for (std::size_t r = 0; r < n; ++r) detail::rotate(vp[r], vq[r], c, s, scratch);
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw NumericalFailure("Jacobi eigensolver did not converge after " + std::to_string(max_sweeps) +
                               " sweeps",
                           to_double(detail::off_diagonal_norm(a)));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymmetricEigen<Real> out;
  out.sweeps = sweep;
  out.values.reserve(n);
  out.vectors = Matrix<Real>(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(a(order[k], order[k]));
    auto dst = out.vectors.row(k);
    auto src = v.row(order[k]);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
template <typename Real>
struct CholeskyFactor {
  Matrix<Real> lower;
  /// Set when a pivot was not positive; the factor is then unusable.
  std::optional<std::size_t> failed_at;
  double min_pivot = 0.0;
  double max_pivot = 0.0;

  /// (max pivot / min pivot)², a cheap lower estimate of κ.
  [[nodiscard]] double condition_estimate() const {
    if (failed_at || min_pivot <= 0.0) return std::numeric_limits<double>::infinity();
    const double r = max_pivot / min_pivot;
    return r * r;
  }
};

template <typename Real>
CholeskyFactor<Real> cholesky(const Matrix<Real>& a) {
  using std::sqrt;
  const std::size_t n = a.rows();
  CholeskyFactor<Real> f;
  f.lower = Matrix<Real>(n, n);
  auto& l = f.lower;
  f.min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    auto li = l.row(i);
    for (std::size_t j = 0; j <= i; ++j) {
      auto lj = l.row(j);
      Real acc = a(i, j);
      for (std::size_t k = 0; k < j; ++k) sub_product(acc, li[k], lj[k]);
      if (j < i) {
        li[j] = acc / lj[j];
      } else {
        if (!(acc > 0.0)) {
          f.failed_at = i;
          return f;
        }
        li[i] = sqrt(acc);
        const double pivot = to_double(li[i]);
        f.min_pivot = std::min(f.min_pivot, pivot);
        f.max_pivot = std::max(f.max_pivot, pivot);
      }
    }
  }
  return f;
}

/// Solves L Lᵀ x = b.
template <typename Real>
std::vector<Real> cholesky_solve(const Matrix<Real>& l, std::span<const Real> b) {
  const std::size_t n = l.rows();
  std::vector<Real> y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    auto li = l.row(i);
    for (std::size_t k = 0; k < i; ++k) sub_product(y[i], li[k], y[k]);
    y[i] /= li[i];
  }
  for (std::size_t i = n; i-- > 0;) {
    auto li = l.row(i);
    y[i] /= li[i];
    for (std::size_t k = 0; k < i; ++k) sub_product(y[k], li[k], y[i]);
  }
  return y;
}

/// b - A x, accumulated in long double when Real is double.
template <typename Real>
std::vector<Real> residual(const Matrix<Real>& a, std::span<const Real> x, std::span<const Real> b) {
  std::vector<Real> r(b.begin(), b.end());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ai = a.row(i);
    if constexpr (std::is_same_v<Real, double>) {
      long double acc = b[i];
      for (std::size_t k = 0; k < ai.size(); ++k) acc -= static_cast<long double>(ai[k]) * x[k];
      r[i] = static_cast<double>(acc);
    } else {
      for (std::size_t k = 0; k < ai.size(); ++k) sub_product(r[i], ai[k], x[k]);
    }
  }
  return r;
}

}  // namespace lis
