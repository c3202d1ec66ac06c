#pragma once

#include <cmath>
#include <numbers>

#include "lis/coupling.hpp"
#include "lis/dense.hpp"
#include "lis/errors.hpp"
#include "lis/geometry.hpp"

namespace lis {

struct LinkBudget {
  double ptx = 1.0;
  double noise_var = 1.0;

  LinkBudget() = default;
  LinkBudget(double ptx_watts, double noise_watts) : ptx(ptx_watts), noise_var(noise_watts) {
    if (!(ptx > 0.0) || !std::isfinite(ptx) || !(noise_var > 0.0) || !std::isfinite(noise_var)) {
      throw InvalidArgument("link budget needs positive finite power and noise variance");
    }
  }
  [[nodiscard]] double ratio() const { return ptx / noise_var; }
};

/// 10 log10(d).
inline double dbi(double d) { return 10.0 * std::log10(d); }

/// (4π‖o‖/λ)², the free-space path gain inverse.
inline double path_gain_inverse(const Vec3& o, double wavelength) {
  const double f = 4.0 * std::numbers::pi * o.norm() / wavelength;
  return f * f;
}

/// |iᴴh|² / (iᴴZi) at the working precision of Real.
template <typename Real>
double beamforming_gain(const BasicComplexVector<Real>& i, const BasicImpedanceMatrix<Real>& z,
                        const BasicComplexVector<Real>& h) {
  if (i.size() != z.size() || h.size() != z.size()) throw InvalidArgument("vector length does not match Z");
  const Real power = quadratic_form(z.entries(), i);
  if (!(power > 0.0)) throw NonRadiatingCurrent("current lies in the numerical null space of Z");
  return to_double(Real(inner(i, h).squared_magnitude() / power));
}

template <typename Real>
double snr(const BasicComplexVector<Real>& i, const BasicImpedanceMatrix<Real>& z, const BasicComplexVector<Real>& h,
           const LinkBudget& lb) {
  return lb.ratio() * beamforming_gain(i, z, h);
}

template <typename Real>
double directivity(const BasicComplexVector<Real>& i, const BasicImpedanceMatrix<Real>& z,
                   const BasicComplexVector<Real>& h, const Vec3& o, double wavelength) {
  return beamforming_gain(i, z, h) * path_gain_inverse(o, wavelength);
}

/// hᴴZ⁻¹h, the gain reached by the coupling-aware matched filter.
template <typename Real>
double ca_mf_gain(const BasicImpedanceMatrix<Real>& z, const BasicComplexVector<Real>& h,
                  double tolerance = kSolveTolerance) {
  const auto x = solve(z, h, tolerance);
  return to_double(inner(h, x).re);
}

/// iᴴi.
template <typename Real>
double excitation_power(const BasicComplexVector<Real>& i) {
  return to_double(squared_norm(i));
}

inline constexpr double kDefaultQuadTolerance = 1e-8;

struct ApertureOptions {
  double quad_tol = kDefaultQuadTolerance;
  /// Integrate over ±y_lis, ±z_lis instead of the physical ±y_lis/2, ±z_lis/2.
  bool full_extent_limits = false;
};

/// Directivity of a continuous coupling-free aperture in the y-z plane:
/// (4π‖o‖/λ)² ∬ x/(4π d³) dz dy, with d the distance from o to (0, y, z).
double d_nc(const Vec3& o, double y_lis, double z_lis, double wavelength, const ApertureOptions& options = {});

}  // namespace lis
