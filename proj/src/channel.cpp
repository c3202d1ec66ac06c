#include "lis/channel.hpp"

#include <cmath>
#include <numbers>

namespace lis {

namespace {

template <typename Real>
BasicComplexVector<Real> free_space_channel(const ArrayGeometry& geom, const Vec3& o, bool projected_aperture) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  if (!o.is_finite()) throw InvalidArgument("UE position is not finite");
  if (projected_aperture && !(o.x > 0.0)) {
    throw DomainError("planar elements need the UE in front of the surface (x > 0)");
  }
  const Real lambda = Real(geom.wavelength());
  const Real four_pi = Real(4.0) * RealTraits<Real>::pi();
  const Real k = Real(2.0) * RealTraits<Real>::pi() / lambda;
  const Real ox = Real(o.x);
  BasicComplexVector<Real> h(geom.size());
  for (std::size_t n = 0; n < geom.size(); ++n) {
    const auto& p = geom.position(n);
    const Real dx = ox - Real(p.x);
    const Real dy = Real(o.y) - Real(p.y);
    const Real dz = Real(o.z) - Real(p.z);
    Real d2 = dx * dx;
    add_product(d2, dy, dy);
    add_product(d2, dz, dz);
    if (!(d2 > 0.0)) throw DomainError("UE coincides with element " + std::to_string(n));
    const Real d = sqrt(d2);
    Real magnitude = lambda / (four_pi * d);
    if (projected_aperture) magnitude *= sqrt(dx / d);
    const Real phase = k * d;
    h.set(n, magnitude * cos(phase), -(magnitude * sin(phase)));
  }
  return h;
}

}  // namespace

template <typename Real>
BasicComplexVector<Real> channel_isotropic(const ArrayGeometry& geom, const Vec3& o) {
  return free_space_channel<Real>(geom, o, false);
}

template <typename Real>
BasicComplexVector<Real> channel_planar(const ArrayGeometry& geom, const Vec3& o) {
  return free_space_channel<Real>(geom, o, true);
}

template BasicComplexVector<double> channel_isotropic<double>(const ArrayGeometry&, const Vec3&);
template BasicComplexVector<double> channel_planar<double>(const ArrayGeometry&, const Vec3&);
template BasicComplexVector<ExtFloat> channel_isotropic<ExtFloat>(const ArrayGeometry&, const Vec3&);
template BasicComplexVector<ExtFloat> channel_planar<ExtFloat>(const ArrayGeometry&, const Vec3&);

std::complex<double> field_at(const Vec3& o, const ArrayGeometry& geom, const ComplexVector& currents,
                              const FieldModel& model) {
  if (currents.size() != geom.size()) throw InvalidArgument("current vector length does not match the array");
  const auto h = channel<double>(geom, o);
  const auto ih = inner(currents, h);
  const double lambda = geom.wavelength();
  const double scale = std::sqrt(model.eta) * std::sqrt(4.0 * std::numbers::pi * model.beta / (lambda * lambda));
  return scale * std::complex<double>(ih.re, ih.im);
}

GaussLegendreRule gauss_legendre(std::size_t order) {
  if (order == 0) throw InvalidArgument("Gauss-Legendre order must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const std::size_t half = (order + 1) / 2;
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // P_n(x) by the three-term recurrence, then P_n' from P_{n-1}.
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t j = 2; j <= order; ++j) {
        const double jj = static_cast<double>(j);
        const double p2 = ((2.0 * jj - 1.0) * x * p1 - (jj - 1.0) * p0) / jj;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

namespace {

struct AngleNode {
  double angle;
  double weight;
};

std::vector<AngleNode> mapped_rule(const GaussLegendreRule& rule, double lo, double hi) {
  std::vector<AngleNode> out;
  out.reserve(rule.nodes.size());
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) out.push_back({mid + half * rule.nodes[i], half * rule.weights[i]});
  return out;
}

double sphere_integral(const ArrayGeometry& geom, const ComplexVector& currents, std::size_t order) {
  using std::numbers::pi;
  const auto rule = gauss_legendre(order);
  const auto thetas = mapped_rule(rule, 0.0, pi);
  std::vector<AngleNode> phis;
  const bool planar = geom.kind() == ElementKind::Planar;
  if (planar) {
    phis = mapped_rule(rule, -0.5 * pi, 0.5 * pi);
    const auto back = mapped_rule(rule, 0.5 * pi, 1.5 * pi);
    phis.insert(phis.end(), back.begin(), back.end());
  } else {
    const std::size_t m = 2 * order;
    for (std::size_t j = 0; j < m; ++j) phis.push_back({2.0 * pi * static_cast<double>(j) / static_cast<double>(m), 2.0 * pi / static_cast<double>(m)});
  }

  const double k = geom.wavenumber();
  const std::size_t n = geom.size();
  double total = 0.0;
  for (const auto& th : thetas) {
    const double st = std::sin(th.angle);
    const double ct = std::cos(th.angle);
    double ring = 0.0;
    for (const auto& ph : phis) {
      const double sp = std::sin(ph.angle);
      const double cp = std::cos(ph.angle);
      std::complex<double> array_factor = 0.0;
      for (std::size_t e = 0; e < n; ++e) {
        const auto& p = geom.position(e);
        const double proj = cp * st * p.x + sp * st * p.y + ct * p.z;
        array_factor += currents.at(e) * std::polar(1.0, -k * proj);
      }
      const double gain = planar ? std::abs(st * cp) : 1.0;
      ring += ph.weight * gain * std::norm(array_factor);
    }
    total += th.weight * st * ring;
  }
  return total / (4.0 * pi);
}

}  // namespace

QuadraturePower radiated_power_quadrature(const ArrayGeometry& geom, const ComplexVector& currents,
                                          const FieldModel& model, std::size_t quad_order) {
  if (geom.size() > kQuadratureMaxElements) {
    throw InvalidArgument("quadrature oracle is limited to " + std::to_string(kQuadratureMaxElements) + " elements");
  }
  if (quad_order < kQuadratureMinOrder) {
    throw InvalidArgument("quadrature order must be at least " + std::to_string(kQuadratureMinOrder));
  }
  if (currents.size() != geom.size()) throw InvalidArgument("current vector length does not match the array");

  QuadraturePower out;
  out.power = model.beta * sphere_integral(geom, currents, quad_order);
  out.refined_power = model.beta * sphere_integral(geom, currents, 2 * quad_order);
  const double scale = std::abs(out.refined_power);
  out.relative_change = scale > 0.0 ? std::abs(out.power - out.refined_power) / scale : std::abs(out.power);
  out.accuracy_warning = out.relative_change > 1e-4;
  return out;
}

}  // namespace lis
