#pragma once

#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "lis/extfloat.hpp"

namespace lis {

/// Arithmetic used by the coupling kernels, eigensolver and linear solve.
class Precision {
 public:
  enum class Mode { MachineDouble, Extended };

  static constexpr unsigned kDefaultExtendedBits = 256;
  static constexpr unsigned kMinExtendedBits = 64;

  constexpr Precision() = default;

  static constexpr Precision machine_double() { return Precision{}; }
  /// Throws InvalidArgument for fewer than 64 mantissa bits.
  static Precision extended(unsigned mantissa_bits = kDefaultExtendedBits);
  /// Accepts "double" or "ext:<bits>" (also "ext" for the default width).
  static Precision parse(std::string_view text);

  [[nodiscard]] constexpr Mode mode() const { return mode_; }
  [[nodiscard]] constexpr bool is_extended() const { return mode_ == Mode::Extended; }
  /// 53 for MachineDouble.
  [[nodiscard]] constexpr unsigned mantissa_bits() const { return bits_; }
  [[nodiscard]] std::string to_string() const;

  friend constexpr bool operator==(const Precision&, const Precision&) = default;

 private:
  constexpr Precision(Mode mode, unsigned bits) : mode_(mode), bits_(bits) {}

  Mode mode_ = Mode::MachineDouble;
  unsigned bits_ = DBL_MANT_DIG;
};

template <typename Real>
struct RealTraits;

template <>
struct RealTraits<double> {
  static double epsilon() { return DBL_EPSILON; }
  static double pi() { return std::numbers::pi; }
  static double to_double(double x) { return x; }
  static long bits() { return DBL_MANT_DIG; }
};

template <>
struct RealTraits<long double> {
  static long double epsilon() { return LDBL_EPSILON; }
  static long double pi() { return std::numbers::pi_v<long double>; }
  static double to_double(long double x) { return static_cast<double>(x); }
  static long bits() { return LDBL_MANT_DIG; }
};

template <>
struct RealTraits<ExtFloat> {
  static ExtFloat epsilon() { return ExtFloat::epsilon(); }
  static ExtFloat pi() { return ExtFloat::pi(); }
  static double to_double(const ExtFloat& x) { return x.to_double(); }
  static long bits() { return ext_working_bits(); }
};

template <typename Real>
double to_double(const Real& x) {
  return RealTraits<Real>::to_double(x);
}

/// Runs `fn.template operator()<Real>()` with Real = double or ExtFloat as
/// selected by `precision`. The extended branch runs inside an
/// ExtPrecisionScope of the requested width.
template <typename Fn>
decltype(auto) with_precision(const Precision& precision, Fn&& fn) {
  if (!precision.is_extended()) {
    return std::forward<Fn>(fn).template operator()<double>();
  }
  ExtPrecisionScope scope(static_cast<long>(precision.mantissa_bits()));
  return std::forward<Fn>(fn).template operator()<ExtFloat>();
}

}  // namespace lis
