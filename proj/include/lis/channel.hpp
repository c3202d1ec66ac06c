#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "lis/dense.hpp"
#include "lis/errors.hpp"
#include "lis/geometry.hpp"
#include "lis/precision.hpp"

namespace lis {

/// Constants of the raw field model. Both cancel in SNR and directivity.
struct FieldModel {
  /// Proportionality factor for the element characteristics.
  double beta = 1.0;
  /// Intrinsic impedance of vacuum, ohms.
  double eta = 376.730313668;
};

/// Unit-gain free-space channel: h_n = λ/(4π d_n) exp(-j k d_n).
template <typename Real>
BasicComplexVector<Real> channel_isotropic(const ArrayGeometry& geom, const Vec3& o);

/// Near-field channel of planar elements: the isotropic entry scaled by
/// sqrt(x_UE / d_n). Requires x_UE > 0.
template <typename Real>
BasicComplexVector<Real> channel_planar(const ArrayGeometry& geom, const Vec3& o);

/// Channel matching the element kind of `geom`.
template <typename Real>
BasicComplexVector<Real> channel(const ArrayGeometry& geom, const Vec3& o) {
  return geom.kind() == ElementKind::Isotropic ? channel_isotropic<Real>(geom, o) : channel_planar<Real>(geom, o);
}

inline ComplexVector channel_isotropic(const ArrayGeometry& geom, const Vec3& o) {
  return channel_isotropic<double>(geom, o);
}
inline ComplexVector channel_planar(const ArrayGeometry& geom, const Vec3& o) {
  return channel_planar<double>(geom, o);
}
inline ComplexVector channel(const ArrayGeometry& geom, const Vec3& o) { return channel<double>(geom, o); }

/// Complex field strength at o: sqrt(η) sqrt(4πβ/λ²) iᴴh.
std::complex<double> field_at(const Vec3& o, const ArrayGeometry& geom, const ComplexVector& currents,
                              const FieldModel& model = {});

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(std::size_t order);

struct QuadraturePower {
  /// β times the sphere integral at the requested order, watts.
  double power = 0.0;
  /// Same integral at twice the order.
  double refined_power = 0.0;
  /// |power - refined_power| / |refined_power|.
  double relative_change = 0.0;
  /// Set when relative_change exceeds 1e-4.
  bool accuracy_warning = false;
};

/// Integrates the far-field power density of `currents` over the unit sphere.
///
/// θ uses Gauss-Legendre with `quad_order` nodes. φ uses the trapezoid rule
/// with 2·quad_order nodes for isotropic elements; planar elements have a
/// kink in |cos φ| at ±π/2, so each half period gets its own Gauss-Legendre
/// rule of `quad_order` nodes instead. Converges to β iᴴZi.
QuadraturePower radiated_power_quadrature(const ArrayGeometry& geom, const ComplexVector& currents,
                                          const FieldModel& model, std::size_t quad_order);

/// Largest array accepted by radiated_power_quadrature.
inline constexpr std::size_t kQuadratureMaxElements = 64;
inline constexpr std::size_t kQuadratureMinOrder = 16;

}  // namespace lis
