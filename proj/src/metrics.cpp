#include "lis/metrics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <string>

namespace lis {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr unsigned kMaxDepth = 15;
// Integrand evaluations before the nested quadrature gives up.
constexpr std::size_t kEvaluationBudget = 50'000'000;

struct BudgetExhausted {};

}  // namespace

double d_nc(const Vec3& o, double y_lis, double z_lis, double wavelength, const ApertureOptions& options) {
  if (!o.is_finite()) throw InvalidArgument("UE position is not finite");
  if (!(o.x > 0.0)) throw DomainError("aperture directivity needs the UE in front of the surface (x > 0)");
  if (!(y_lis > 0.0) || !(z_lis > 0.0) || !(wavelength > 0.0)) {
    throw InvalidArgument("aperture size and wavelength must be positive");
  }
  if (!(options.quad_tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");

  const double hy = options.full_extent_limits ? y_lis : 0.5 * y_lis;
  const double hz = options.full_extent_limits ? z_lis : 0.5 * z_lis;
  const double inner_tol = 0.1 * options.quad_tol;
  double worst_inner = 0.0;
  std::size_t evaluations = 0;

  auto column = [&](double y) {
    const double a2 = o.x * o.x + (y - o.y) * (y - o.y);
    auto integrand = [&](double z) {
      if (++evaluations > kEvaluationBudget) throw BudgetExhausted{};
      const double d2 = a2 + (z - o.z) * (z - o.z);
      return o.x / (d2 * std::sqrt(d2));
    };
    double err = 0.0;
    const double v = Rule::integrate(integrand, -hz, hz, kMaxDepth, inner_tol, &err);
    if (v > 0.0) worst_inner = std::max(worst_inner, err / v);
    return v;
  };
  double err = 0.0;
  double integral = 0.0;
  try {
    integral = Rule::integrate(column, -hy, hy, kMaxDepth, inner_tol, &err);
  } catch (const BudgetExhausted&) {
    throw AccuracyError("aperture quadrature exceeded " + std::to_string(kEvaluationBudget) +
                        " evaluations before reaching tolerance " + std::to_string(options.quad_tol));
  }
  const double rel = integral > 0.0 ? err / integral : err;
  if (!std::isfinite(integral) || rel > options.quad_tol || worst_inner > options.quad_tol) {
    throw AccuracyError("aperture quadrature did not reach tolerance " + std::to_string(options.quad_tol) +
                        " (estimated relative error " + std::to_string(std::max(rel, worst_inner)) + ")");
  }
  return path_gain_inverse(o, wavelength) * integral / (4.0 * std::numbers::pi);
}

}  // namespace lis
