#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace lis {

/// Speed of light in vacuum, m/s.
inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Default cap on the number of elements a layout may contain.
inline constexpr std::size_t kDefaultMaxElements = 100'000;

/// Position in meters. The surface lies in the y-z plane, broadside is +x.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

  [[nodiscard]] double norm() const;
  [[nodiscard]] bool is_finite() const;
};

enum class ElementKind { Isotropic, Planar };

[[nodiscard]] std::string_view to_string(ElementKind kind);
/// Accepts "isotropic" or "planar"; throws InvalidArgument otherwise.
[[nodiscard]] ElementKind parse_element_kind(std::string_view text);

/// Wavelength for a carrier frequency in Hz.
[[nodiscard]] double wavelength_for(double frequency_hz);

/// Element layout of a surface. Immutable once built.
class ArrayGeometry {
 public:
  /// Validates the layout: finite positions on the x = 0 plane, pairwise
  /// distinct, centered on the origin.
  ArrayGeometry(std::vector<Vec3> positions, ElementKind kind, double dy, double dz, double wavelength);

  [[nodiscard]] std::span<const Vec3> positions() const { return positions_; }
  [[nodiscard]] const Vec3& position(std::size_t n) const { return positions_[n]; }
  [[nodiscard]] std::size_t size() const { return positions_.size(); }
  [[nodiscard]] ElementKind kind() const { return kind_; }
  [[nodiscard]] double dy() const { return dy_; }
  [[nodiscard]] double dz() const { return dz_; }
  [[nodiscard]] double wavelength() const { return wavelength_; }
  [[nodiscard]] double wavenumber() const { return 2.0 * std::numbers::pi / wavelength_; }
  /// dy*dz for planar elements, 0 for isotropic ones.
  [[nodiscard]] double aperture_per_element() const;
  /// Largest distance of an element from the origin along y or z.
  [[nodiscard]] double max_extent() const;

 private:
  std::vector<Vec3> positions_;
  ElementKind kind_;
  double dy_;
  double dz_;
  double wavelength_;
};

/// Centered rectangular lattice with exact pitch (dy, dz) and
/// floor(extent/pitch) + 1 elements per axis. Elements are ordered with z
/// varying fastest.
[[nodiscard]] ArrayGeometry planar_grid(double y_lis, double z_lis, double dy, double dz, ElementKind kind,
                                        double wavelength, std::size_t max_elements = kDefaultMaxElements);

/// n elements on the z axis at pitch dz, centered on the origin.
[[nodiscard]] ArrayGeometry linear_array(std::size_t n, double dz, ElementKind kind, double wavelength);

[[nodiscard]] double distance(const Vec3& o, const Vec3& p);

/// arccos(x_UE / d); throws DomainError when o == p.
[[nodiscard]] double departure_angle(const Vec3& o, const Vec3& p);

}  // namespace lis
