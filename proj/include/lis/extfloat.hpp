#pragma once

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace lis {

/// Binary floating point number with a configurable mantissa, backed by GNU MPFR.
///
/// A freshly constructed value takes the calling thread's working precision
/// (256 bits unless an ExtPrecisionScope says otherwise). Copies keep the
/// precision of their source; arithmetic results use the wider operand.
class ExtFloat {
 public:
  ExtFloat();
  ExtFloat(double v);  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  ExtFloat(I v) : ExtFloat(static_cast<double>(v)) {}  // NOLINT(google-explicit-constructor)

  ExtFloat(const ExtFloat& other);
  ExtFloat(ExtFloat&& other) noexcept;
  ExtFloat& operator=(const ExtFloat& other);
  ExtFloat& operator=(ExtFloat&& other) noexcept;
  ExtFloat& operator=(double v);
  ~ExtFloat();

  /// Parses a decimal or hex literal at the working precision.
  static ExtFloat parse(std::string_view text);
  static ExtFloat pi();
  /// 2^(1 - bits) at the working precision.
  static ExtFloat epsilon();

  [[nodiscard]] double to_double() const;
  explicit operator double() const { return to_double(); }
  [[nodiscard]] long precision_bits() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_finite() const;
  /// Scientific notation with `digits` significant digits.
  [[nodiscard]] std::string str(int digits = 20) const;
  /// Copy rounded to `bits` mantissa bits.
  [[nodiscard]] ExtFloat rounded(long bits) const;

  ExtFloat& operator+=(const ExtFloat& rhs);
  ExtFloat& operator-=(const ExtFloat& rhs);
  ExtFloat& operator*=(const ExtFloat& rhs);
  ExtFloat& operator/=(const ExtFloat& rhs);
  ExtFloat& operator+=(double rhs);
  ExtFloat& operator-=(double rhs);
  ExtFloat& operator*=(double rhs);
  ExtFloat& operator/=(double rhs);

  /// this += a * b, rounded once.
  ExtFloat& add_product(const ExtFloat& a, const ExtFloat& b);
  /// this -= a * b, rounded once.
  ExtFloat& sub_product(const ExtFloat& a, const ExtFloat& b);

  ExtFloat operator-() const;

  friend ExtFloat operator+(ExtFloat a, const ExtFloat& b) { return a += b; }
  friend ExtFloat operator-(ExtFloat a, const ExtFloat& b) { return a -= b; }
  friend ExtFloat operator*(ExtFloat a, const ExtFloat& b) { return a *= b; }
  friend ExtFloat operator/(ExtFloat a, const ExtFloat& b) { return a /= b; }
  friend ExtFloat operator+(ExtFloat a, double b) { return a += b; }
  friend ExtFloat operator-(ExtFloat a, double b) { return a -= b; }
  friend ExtFloat operator*(ExtFloat a, double b) { return a *= b; }
  friend ExtFloat operator/(ExtFloat a, double b) { return a /= b; }
  friend ExtFloat operator+(double a, ExtFloat b) { return b += a; }
  friend ExtFloat operator-(double a, const ExtFloat& b) { return ExtFloat(a) -= b; }
  friend ExtFloat operator*(double a, ExtFloat b) { return b *= a; }
  friend ExtFloat operator/(double a, const ExtFloat& b) { return ExtFloat(a) /= b; }

  friend bool operator==(const ExtFloat& a, const ExtFloat& b);
  friend std::partial_ordering operator<=>(const ExtFloat& a, const ExtFloat& b);
  friend bool operator==(const ExtFloat& a, double b);
  friend std::partial_ordering operator<=>(const ExtFloat& a, double b);

  friend ExtFloat abs(ExtFloat x);
  friend ExtFloat sqrt(ExtFloat x);
  friend ExtFloat sin(ExtFloat x);
  friend ExtFloat cos(ExtFloat x);
  friend ExtFloat exp(ExtFloat x);
  friend ExtFloat log(ExtFloat x);
  friend bool isfinite(const ExtFloat& x) { return x.is_finite(); }

  friend std::ostream& operator<<(std::ostream& os, const ExtFloat& x);

  mpfr_ptr raw() { return value_; }
  [[nodiscard]] mpfr_srcptr raw() const { return value_; }

 private:
  explicit ExtFloat(mpfr_prec_t bits, int /*tag*/);
  [[nodiscard]] bool live() const { return value_->_mpfr_d != nullptr; }
  void widen_to(const ExtFloat& other);

  mpfr_t value_;
};

/// Working precision of the calling thread in mantissa bits.
[[nodiscard]] long ext_working_bits();

/// Sets the calling thread's working precision for newly created ExtFloat
/// values and restores the previous one on destruction.
class ExtPrecisionScope {
 public:
  explicit ExtPrecisionScope(long mantissa_bits);
  ~ExtPrecisionScope();
  ExtPrecisionScope(const ExtPrecisionScope&) = delete;
  ExtPrecisionScope& operator=(const ExtPrecisionScope&) = delete;

 private:
  long previous_;
};

}  // namespace lis
