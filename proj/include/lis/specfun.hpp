#pragma once

#include <cfloat>
#include <cmath>
#include <numbers>
#include <type_traits>

#include "lis/precision.hpp"

namespace lis::specfun {

/// |x| at or below this uses the Maclaurin series for J1(x)/x, above it the
/// backward (Miller) recurrence. Both are valid on either side of the cut.
inline constexpr double kJ1SeriesLimit = 12.0;

/// Below this |x| the sinc kernel is summed as a series.
inline constexpr double kSincSeriesLimit = 1e-4;

namespace detail {

// Extra bits carried by the extended-precision J1 branches.
inline constexpr long kGuardBits = 48;

// Σ_m (-1)^m (x/2)^(2m) / (2 m! (m+1)!), stopping once past the largest term
// and below eps relative to the running sum.
template <typename W>
W j1_over_x_series_sum(const W& x, const W& eps) {
  using std::abs;
  const W q = x * x / 4.0;
  W term = W(0.5);
  W sum = term;
  W peak = abs(term);
  for (int m = 1; m < 1000; ++m) {
    term *= -q;
    term /= static_cast<double>(m) * static_cast<double>(m + 1);
    sum += term;
    const W mag = abs(term);
    if (mag > peak) peak = mag;
    const bool past_peak = static_cast<double>(m) * static_cast<double>(m + 1) > to_double(q);
    if (past_peak && (mag <= eps * abs(sum) || mag <= eps * eps * peak)) break;
  }
  return sum;
}

// Backward recurrence J_{n-1} = (2n/x) J_n - J_{n+1} from a start order where
// J_n(x) is below 2^-(bits+16), normalized with J_0 + 2 Σ J_2k = 1.
template <typename W>
W j1_over_x_miller(const W& x, int bits) {
  const double xd = to_double(x);
  const double target = static_cast<double>(bits) + 16.0;
  int start = static_cast<int>(std::ceil(xd)) + 2;
  while (true) {
    const double n = start;
    const double log2_j = n * std::log2(std::exp(1.0) * xd / (2.0 * n)) -
                          0.5 * std::log2(2.0 * std::numbers::pi * n);
    if (n > xd && -log2_j >= target) break;
    ++start;
  }
  if (start % 2 != 0) ++start;

  W upper = W(0.0);  // f_{n+1}
  W current = W(1.0);  // f_n
  W norm = W(0.0);
  W f1 = W(0.0);
  const W inv_x = W(1.0) / x;
  for (int n = start; n >= 1; --n) {
    if (n % 2 == 0) norm += current;
    W lower = current * (2.0 * n) * inv_x - upper;  // f_{n-1}
    upper = std::move(current);
    current = std::move(lower);
    if (n == 2) f1 = current;
  }
  // current = f_0
  norm = 2.0 * norm + current;
  return f1 / (norm * x);
}

}  // namespace detail

/// sin(x)/x with the removable singularity filled in.
template <typename Real>
Real sinc_unnormalized(const Real& x) {
  using std::abs;
  using std::sin;
  if (abs(x) < kSincSeriesLimit) {
    const Real eps = RealTraits<Real>::epsilon();
    const Real x2 = x * x;
    Real term = Real(1.0);
    Real sum = term;
    for (int m = 1; m < 64; ++m) {
      term *= -x2;
      term /= static_cast<double>(2 * m) * static_cast<double>(2 * m + 1);
      sum += term;
      if (abs(term) <= eps * abs(sum)) break;
    }
    return sum;
  }
  return sin(x) / x;
}

/// Maclaurin branch of J1(x)/x, summed in wider arithmetic than Real.
template <typename Real>
Real j1_over_x_series(const Real& x) {
  using std::abs;
  if constexpr (std::is_same_v<Real, double>) {
    const long double wx = std::abs(x);
    return static_cast<double>(detail::j1_over_x_series_sum<long double>(wx, LDBL_EPSILON));
  } else {
    const long bits = ext_working_bits();
    const ExtFloat wx = abs(x).rounded(bits + detail::kGuardBits);
    ExtFloat result;
    {
      ExtPrecisionScope guard(bits + detail::kGuardBits);
      result = detail::j1_over_x_series_sum<ExtFloat>(wx, ExtFloat::epsilon());
    }
    return result.rounded(bits);
  }
}

/// Recurrence branch of J1(x)/x. Defined for x != 0.
template <typename Real>
Real j1_over_x_recurrence(const Real& x) {
  using std::abs;
  if constexpr (std::is_same_v<Real, double>) {
    const long double wx = std::abs(x);
    return static_cast<double>(detail::j1_over_x_miller<long double>(wx, LDBL_MANT_DIG));
  } else {
    const long bits = ext_working_bits();
    const ExtFloat wx = abs(x).rounded(bits + detail::kGuardBits);
    ExtFloat result;
    {
      ExtPrecisionScope guard(bits + detail::kGuardBits);
      result = detail::j1_over_x_miller<ExtFloat>(wx, static_cast<int>(bits + detail::kGuardBits));
    }
    return result.rounded(bits);
  }
}

/// J1(x)/x, equal to 1/2 at x = 0.
template <typename Real>
Real j1_over_x(const Real& x) {
  using std::abs;
  if (abs(x) <= kJ1SeriesLimit) return j1_over_x_series(x);
  return j1_over_x_recurrence(x);
}

/// Double-valued entry points evaluated at the requested precision.
double sinc_unnormalized(double x, const Precision& precision);
double j1_over_x(double x, const Precision& precision);

}  // namespace lis::specfun
