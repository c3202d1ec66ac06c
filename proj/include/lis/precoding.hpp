#pragma once

#include <cstddef>

#include "lis/coupling.hpp"
#include "lis/dense.hpp"
#include "lis/errors.hpp"

namespace lis {

/// Coupling-unaware matched filter: i = h.
template <typename Real>
BasicComplexVector<Real> nca_mf(const BasicComplexVector<Real>& h) {
  if (!(squared_norm(h) > 0.0)) throw DegenerateInput("matched filter of a zero channel");
  return h;
}

/// Coupling-aware matched filter: i = Z⁻¹h by linear solve at the working
/// precision of Z.
template <typename Real>
BasicComplexVector<Real> ca_mf(const BasicImpedanceMatrix<Real>& z, const BasicComplexVector<Real>& h,
                               double tolerance = kSolveTolerance) {
  return solve(z, h, tolerance);
}

/// Σ over the `modes` dominant eigenpairs of u_k (u_kᵀh) / s_k, i.e. the
/// truncated pseudo-inverse applied to h without forming it.
template <typename Real>
BasicComplexVector<Real> ca_pmf_modes(const BasicImpedanceMatrix<Real>& z, const BasicComplexVector<Real>& h,
                                      std::size_t modes) {
  const auto& eig = z.eigen();
  const std::size_t n = z.size();
  if (h.size() != n) throw InvalidArgument("channel length does not match the impedance matrix");
  if (modes == 0) throw EmptySpectrum("truncated inverse keeps no eigenvalue");
  if (modes > n) throw InvalidArgument("more retained modes than eigenvalues");
  BasicComplexVector<Real> out(n);
  Real cr, ci;
  for (std::size_t k = 0; k < modes; ++k) {
    if (!(eig.values[k] > 0.0)) throw EmptySpectrum("cannot invert a zero eigenvalue");
    const auto u = eig.vectors.row(k);
    cr = dot<Real>(u, h.re) / eig.values[k];
    ci = dot<Real>(u, h.im) / eig.values[k];
    for (std::size_t r = 0; r < n; ++r) {
      add_product(out.re[r], cr, u[r]);
      add_product(out.im[r], ci, u[r]);
    }
  }
  return out;
}

/// Pseudo-inverse precoder keeping eigenvalues strictly above `threshold`.
template <typename Real>
BasicComplexVector<Real> ca_pmf(const BasicImpedanceMatrix<Real>& z, const BasicComplexVector<Real>& h,
                                double threshold) {
  if (!(threshold >= 0.0)) throw InvalidArgument("truncation threshold must be non-negative");
  const std::size_t modes = retained_mode_count(z, threshold);
  if (modes == 0) throw EmptySpectrum("every eigenvalue is at or below the truncation threshold");
  return ca_pmf_modes(z, h, modes);
}

/// i / sqrt(iᴴZi).
template <typename Real>
BasicComplexVector<Real> power_normalize(const BasicComplexVector<Real>& i, const BasicImpedanceMatrix<Real>& z) {
  using std::sqrt;
  if (i.size() != z.size()) throw InvalidArgument("current length does not match the impedance matrix");
  const Real power = quadratic_form(z.entries(), i);
  if (!(power > 0.0)) throw NonRadiatingCurrent("current lies in the numerical null space of Z");
  const Real scale = sqrt(power);
  BasicComplexVector<Real> out(i.size());
  for (std::size_t n = 0; n < i.size(); ++n) out.set(n, i.re[n] / scale, i.im[n] / scale);
  return out;
}

}  // namespace lis
