#include "lis/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lis/errors.hpp"

namespace lis {

namespace {

// Absorbs representation error in extent/pitch ratios that are mathematically integers (0.3 / 0.1).
constexpr double kCountSlack = 1e-9;

std::size_t axis_count(double extent, double pitch) {
  return static_cast<std::size_t>(std::floor(extent / pitch * (1.0 + kCountSlack))) + 1;
}

double centered_coordinate(std::size_t index, std::size_t count, double pitch) {
  return (static_cast<double>(index) - 0.5 * static_cast<double>(count - 1)) * pitch;
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

double Vec3::norm() const { return std::hypot(x, y, z); }

bool Vec3::is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

std::string_view to_string(ElementKind kind) {
  return kind == ElementKind::Isotropic ? "isotropic" : "planar";
}

ElementKind parse_element_kind(std::string_view text) {
  if (text == "isotropic") return ElementKind::Isotropic;
  if (text == "planar") return ElementKind::Planar;
  throw InvalidArgument("unknown element kind '" + std::string(text) + "'");
}

double wavelength_for(double frequency_hz) {
  require_positive(frequency_hz, "frequency");
  return kSpeedOfLight / frequency_hz;
}

ArrayGeometry::ArrayGeometry(std::vector<Vec3> positions, ElementKind kind, double dy, double dz,
                             double wavelength)
    : positions_(std::move(positions)), kind_(kind), dy_(dy), dz_(dz), wavelength_(wavelength) {
  require_positive(dy_, "dy");
  require_positive(dz_, "dz");
  require_positive(wavelength_, "wavelength");
  if (positions_.empty()) throw InvalidGeometry("geometry needs at least one element");

  Vec3 sum;
  for (const auto& p : positions_) {
    if (!p.is_finite()) throw InvalidGeometry("element position is not finite");
    if (p.x != 0.0) throw InvalidGeometry("elements must lie on the x = 0 plane");
    sum = sum + p;
  }
  const double count = static_cast<double>(positions_.size());
  const double extent = max_extent();
  if (std::abs(sum.y / count) > 1e-12 * extent || std::abs(sum.z / count) > 1e-12 * extent) {
    throw InvalidGeometry("element layout is not centered on the origin");
  }

  std::vector<Vec3> sorted = positions_;
  const auto key = [](const Vec3& a, const Vec3& b) { return a.y != b.y ? a.y < b.y : a.z < b.z; };
  std::sort(sorted.begin(), sorted.end(), key);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidGeometry("element positions must be pairwise distinct");
  }
}

double ArrayGeometry::aperture_per_element() const { return kind_ == ElementKind::Planar ? dy_ * dz_ : 0.0; }

double ArrayGeometry::max_extent() const {
  double extent = 0.0;
  for (const auto& p : positions_) extent = std::max({extent, std::abs(p.y), std::abs(p.z)});
  return extent;
}

ArrayGeometry planar_grid(double y_lis, double z_lis, double dy, double dz, ElementKind kind, double wavelength,
                          std::size_t max_elements) {
  require_positive(y_lis, "y_lis");
  require_positive(z_lis, "z_lis");
  require_positive(dy, "dy");
  require_positive(dz, "dz");
  require_positive(wavelength, "wavelength");
  if (dy > y_lis || dz > z_lis) throw InvalidArgument("element pitch exceeds the panel extent");

  const std::size_t ny = axis_count(y_lis, dy);
  const std::size_t nz = axis_count(z_lis, dz);
  if (ny > max_elements || nz > max_elements || ny * nz > max_elements) {
    throw CapacityError("planar grid of " + std::to_string(ny) + "x" + std::to_string(nz) +
                        " elements exceeds the cap of " + std::to_string(max_elements));
  }

  std::vector<Vec3> positions;
  positions.reserve(ny * nz);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t iz = 0; iz < nz; ++iz) {
      positions.push_back({0.0, centered_coordinate(iy, ny, dy), centered_coordinate(iz, nz, dz)});
    }
  }
  return ArrayGeometry(std::move(positions), kind, dy, dz, wavelength);
}

ArrayGeometry linear_array(std::size_t n, double dz, ElementKind kind, double wavelength) {
  if (n == 0) throw InvalidArgument("linear array needs at least one element");
  require_positive(dz, "dz");
  std::vector<Vec3> positions;
  positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) positions.push_back({0.0, 0.0, centered_coordinate(i, n, dz)});
  // A line has no y pitch; reuse dz so the per-element aperture stays dz².
  return ArrayGeometry(std::move(positions), kind, dz, dz, wavelength);
}

double distance(const Vec3& o, const Vec3& p) { return (o - p).norm(); }

double departure_angle(const Vec3& o, const Vec3& p) {
  const double d = distance(o, p);
  if (d == 0.0) throw DomainError("departure angle undefined at zero distance");
  return std::acos(std::clamp((o - p).x / d, -1.0, 1.0));
}

}  // namespace lis
