#pragma once

#include <cstddef>
#include <exception>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "lis/dense.hpp"
#include "lis/errors.hpp"
#include "lis/geometry.hpp"
#include "lis/linalg.hpp"
#include "lis/precision.hpp"
#include "lis/specfun.hpp"

namespace lis {

/// Double matrices above this size are diagonalized with LAPACK instead of
/// the Jacobi sweep.
inline constexpr std::size_t kJacobiDoubleLimit = 400;

/// Relative residual a coupling-aware solve has to reach.
inline constexpr double kSolveTolerance = 1e-8;

/// LAPACK dsyevd wrapper returning the same layout as jacobi_eigen.
SymmetricEigen<double> lapack_eigen(const Matrix<double>& a);

/// Mutual-coupling matrix Z of a surface. iᴴZi is the radiated power of the
/// currents i up to the constant β (and the element-area constant for planar
/// elements).
///
/// Immutable after construction. The eigendecomposition is computed on first
/// use and shared by copies; concurrent readers are safe.
template <typename Real>
class BasicImpedanceMatrix {
 public:
  BasicImpedanceMatrix(Matrix<Real> entries, ElementKind kind)
      : entries_(std::make_shared<const Matrix<Real>>(std::move(entries))),
        kind_(kind),
        bits_(RealTraits<Real>::bits()),
        cache_(std::make_shared<EigenCache>()) {
    if (entries_->rows() != entries_->cols() || entries_->rows() == 0) {
      throw InvalidArgument("impedance matrix must be square and non-empty");
    }
  }

  [[nodiscard]] const Matrix<Real>& entries() const { return *entries_; }
  [[nodiscard]] const Real& operator()(std::size_t n, std::size_t m) const { return (*entries_)(n, m); }
  [[nodiscard]] std::size_t size() const { return entries_->rows(); }
  [[nodiscard]] ElementKind kind() const { return kind_; }
  [[nodiscard]] Precision precision() const {
    if constexpr (std::is_same_v<Real, double>) {
      return Precision::machine_double();
    } else {
      return Precision::extended(static_cast<unsigned>(bits_));
    }
  }

  /// Eigenvalues descending (negative round-off clamped to 0) and the
  /// matching orthonormal eigenvectors.
  [[nodiscard]] const SymmetricEigen<Real>& eigen() const {
    std::call_once(cache_->once, [this] {
      if constexpr (std::is_same_v<Real, double>) {
        cache_->value = entries_->rows() > kJacobiDoubleLimit ? lapack_eigen(*entries_) : jacobi_eigen(*entries_);
      } else {
        ExtPrecisionScope scope(bits_);
        cache_->value = jacobi_eigen(*entries_);
      }
      for (auto& s : cache_->value->values) {
        if (s < 0.0) s = Real(0.0);
      }
    });
    return *cache_->value;
  }

 private:
  struct EigenCache {
    std::once_flag once;
    std::optional<SymmetricEigen<Real>> value;
  };

  std::shared_ptr<const Matrix<Real>> entries_;
  ElementKind kind_;
  long bits_;
  std::shared_ptr<EigenCache> cache_;
};

using ImpedanceMatrix = BasicImpedanceMatrix<double>;
using ExtImpedanceMatrix = BasicImpedanceMatrix<ExtFloat>;

/// Coupling kernel for one pair: sinc(k r) for isotropic, J1(k r)/(k r) for
/// planar elements (the 4πA/λ² factor is dropped).
template <typename Real>
Real coupling_kernel(ElementKind kind, const Real& kr) {
  return kind == ElementKind::Isotropic ? specfun::sinc_unnormalized(kr) : specfun::j1_over_x(kr);
}

/// Builds Z from element-position differences at the working precision of Real.
template <typename Real>
BasicImpedanceMatrix<Real> impedance(const ArrayGeometry& geom) {
  using std::sqrt;
  const std::size_t n = geom.size();
  const Real k = Real(2.0) * RealTraits<Real>::pi() / Real(geom.wavelength());
  Matrix<Real> z(n, n);
  const Real diagonal = coupling_kernel(geom.kind(), Real(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pi = geom.position(i);
    z(i, i) = diagonal;
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& pj = geom.position(j);
      const Real dy = Real(pi.y) - Real(pj.y);
      const Real dz = Real(pi.z) - Real(pj.z);
      Real r2 = dy * dy;
      add_product(r2, dz, dz);
      z(i, j) = coupling_kernel(geom.kind(), k * sqrt(r2));
      z(j, i) = z(i, j);
    }
  }
  return BasicImpedanceMatrix<Real>(std::move(z), geom.kind());
}

/// Z at machine precision.
ImpedanceMatrix impedance(const ArrayGeometry& geom);

/// Cached eigendecomposition of Z.
template <typename Real>
const SymmetricEigen<Real>& sym_eig(const BasicImpedanceMatrix<Real>& z) {
  return z.eigen();
}

/// s_max / s_min; +infinity when the smallest (clamped) eigenvalue is 0.
template <typename Real>
double condition_number(const BasicImpedanceMatrix<Real>& z) {
  const auto& values = z.eigen().values;
  if (!(values.front() > 0.0)) throw DegenerateInput("condition number of a zero matrix");
  if (!(values.back() > 0.0)) return std::numeric_limits<double>::infinity();
  return to_double(Real(values.front() / values.back()));
}

/// Number of eigenvalues strictly above `threshold`.
template <typename Real>
std::size_t retained_mode_count(const BasicImpedanceMatrix<Real>& z, double threshold) {
  std::size_t count = 0;
  for (const auto& s : z.eigen().values) {
    if (s > threshold) ++count;
  }
  return count;
}

/// Σ over the `modes` largest eigenvalues of s_n⁻¹ u_n u_nᵀ.
template <typename Real>
Matrix<Real> truncated_inverse_modes(const BasicImpedanceMatrix<Real>& z, std::size_t modes) {
  const auto& eig = z.eigen();
  const std::size_t n = z.size();
  if (modes == 0) throw EmptySpectrum("truncated inverse keeps no eigenvalue");
  if (modes > n) throw InvalidArgument("more retained modes than eigenvalues");
  for (std::size_t k = 0; k < modes; ++k) {
    if (!(eig.values[k] > 0.0)) throw EmptySpectrum("cannot invert a zero eigenvalue");
  }
  Matrix<Real> out(n, n);
  Real w;
  for (std::size_t k = 0; k < modes; ++k) {
    const auto u = eig.vectors.row(k);
    for (std::size_t r = 0; r < n; ++r) {
      w = u[r] / eig.values[k];
      auto row = out.row(r);
      for (std::size_t c = 0; c < n; ++c) add_product(row[c], w, u[c]);
    }
  }
  return out;
}

/// Pseudo-inverse keeping eigenvalues strictly above `threshold`.
template <typename Real>
Matrix<Real> truncated_inverse(const BasicImpedanceMatrix<Real>& z, double threshold) {
  if (!(threshold >= 0.0)) throw InvalidArgument("truncation threshold must be non-negative");
  const std::size_t modes = retained_mode_count(z, threshold);
  if (modes == 0) throw EmptySpectrum("every eigenvalue is at or below the truncation threshold");
  return truncated_inverse_modes(z, modes);
}

/// Solves Z x = h by Cholesky with one refinement pass. Throws
/// IllConditionedSolve when the relative residual exceeds `tolerance`.
template <typename Real>
BasicComplexVector<Real> solve(const BasicImpedanceMatrix<Real>& z, const BasicComplexVector<Real>& h,
                               double tolerance = kSolveTolerance) {
  using std::sqrt;
  if (h.size() != z.size()) throw InvalidArgument("channel length does not match the impedance matrix");
  const auto factor = cholesky(z.entries());
  if (factor.failed_at) {
    throw IllConditionedSolve("impedance matrix is not positive definite at working precision (pivot " +
                                  std::to_string(*factor.failed_at) + ")",
                              std::numeric_limits<double>::infinity(), factor.condition_estimate());
  }
  const auto refine = [&](const std::vector<Real>& rhs) {
    auto x = cholesky_solve<Real>(factor.lower, rhs);
    const auto r = residual<Real>(z.entries(), x, rhs);
    const auto dx = cholesky_solve<Real>(factor.lower, r);
    for (std::size_t n = 0; n < x.size(); ++n) x[n] += dx[n];
    return x;
  };
  BasicComplexVector<Real> x;
  x.re = refine(h.re);
  x.im = refine(h.im);

  const auto r_re = residual<Real>(z.entries(), x.re, h.re);
  const auto r_im = residual<Real>(z.entries(), x.im, h.im);
  const Real r_norm2 = dot<Real>(r_re, r_re) + dot<Real>(r_im, r_im);
  const Real h_norm2 = squared_norm(h);
  if (!(h_norm2 > 0.0)) return x;
  const double rel = std::sqrt(to_double(Real(r_norm2 / h_norm2)));
  if (!(rel <= tolerance)) {
    throw IllConditionedSolve("solve residual " + std::to_string(rel) + " exceeds " + std::to_string(tolerance), rel,
                              factor.condition_estimate());
  }
  return x;
}

/// Plain-text dump: one row per line, 17 significant digits, space separated.
void write_matrix(std::ostream& out, const Matrix<double>& m);
/// Reads the format written by write_matrix.
Matrix<double> read_matrix(std::istream& in);

}  // namespace lis
