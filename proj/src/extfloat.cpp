#include "lis/extfloat.hpp"

#include "lis/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace lis {

namespace {

thread_local long g_working_bits = 256;

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

}  // namespace

long ext_working_bits() { return g_working_bits; }

ExtPrecisionScope::ExtPrecisionScope(long mantissa_bits) : previous_(g_working_bits) {
  if (mantissa_bits < MPFR_PREC_MIN || mantissa_bits > MPFR_PREC_MAX) {
    throw InvalidArgument("ExtPrecisionScope: mantissa bits out of range");
  }
  g_working_bits = mantissa_bits;
}

ExtPrecisionScope::~ExtPrecisionScope() { g_working_bits = previous_; }

ExtFloat::ExtFloat(mpfr_prec_t bits, int /*tag*/) { mpfr_init2(value_, bits); }

ExtFloat::ExtFloat() : ExtFloat(g_working_bits, 0) { mpfr_set_zero(value_, 1); }

ExtFloat::ExtFloat(double v) : ExtFloat(g_working_bits, 0) { mpfr_set_d(value_, v, kRound); }

ExtFloat::ExtFloat(const ExtFloat& other) : ExtFloat(mpfr_get_prec(other.value_), 0) {
  mpfr_set(value_, other.value_, kRound);
}

ExtFloat::ExtFloat(ExtFloat&& other) noexcept {
  *value_ = *other.value_;
  other.value_->_mpfr_d = nullptr;
}

ExtFloat& ExtFloat::operator=(const ExtFloat& other) {
  if (this == &other) return *this;
  if (!live()) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
  } else if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
  }
  mpfr_set(value_, other.value_, kRound);
  return *this;
}

ExtFloat& ExtFloat::operator=(ExtFloat&& other) noexcept {
  if (this == &other) return *this;
  if (live()) mpfr_swap(value_, other.value_);
  else {
    *value_ = *other.value_;
    other.value_->_mpfr_d = nullptr;
  }
  return *this;
}

ExtFloat& ExtFloat::operator=(double v) {
  if (!live()) mpfr_init2(value_, g_working_bits);
  mpfr_set_d(value_, v, kRound);
  return *this;
}

ExtFloat::~ExtFloat() {
  if (live()) mpfr_clear(value_);
}

ExtFloat ExtFloat::parse(std::string_view text) {
  ExtFloat r;
  const std::string s(text);
  if (mpfr_set_str(r.value_, s.c_str(), 0, kRound) != 0) {
    throw InvalidArgument("ExtFloat::parse: not a number: " + s);
  }
  return r;
}

ExtFloat ExtFloat::pi() {
  ExtFloat r;
  mpfr_const_pi(r.value_, kRound);
  return r;
}

ExtFloat ExtFloat::epsilon() {
  ExtFloat r(1.0);
  mpfr_mul_2si(r.value_, r.value_, 1 - g_working_bits, kRound);
  return r;
}

double ExtFloat::to_double() const { return mpfr_get_d(value_, kRound); }

long ExtFloat::precision_bits() const { return static_cast<long>(mpfr_get_prec(value_)); }

bool ExtFloat::is_zero() const { return mpfr_zero_p(value_) != 0; }

bool ExtFloat::is_finite() const { return mpfr_number_p(value_) != 0; }

std::string ExtFloat::str(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  const std::string fmt = "%." + std::to_string(std::max(digits - 1, 0)) + "Re";
  const int n = mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), value_);
  return std::string(buf.data(), static_cast<std::size_t>(std::max(n, 0)));
}

ExtFloat ExtFloat::rounded(long bits) const {
  ExtFloat r(static_cast<mpfr_prec_t>(bits), 0);
  mpfr_set(r.value_, value_, kRound);
  return r;
}

void ExtFloat::widen_to(const ExtFloat& other) {
  if (mpfr_get_prec(other.value_) > mpfr_get_prec(value_)) {
    mpfr_prec_round(value_, mpfr_get_prec(other.value_), kRound);
  }
}

ExtFloat& ExtFloat::operator+=(const ExtFloat& rhs) {
  widen_to(rhs);
  mpfr_add(value_, value_, rhs.value_, kRound);
  return *this;
}

ExtFloat& ExtFloat::operator-=(const ExtFloat& rhs) {
  widen_to(rhs);
  mpfr_sub(value_, value_, rhs.value_, kRound);
  return *this;
}

ExtFloat& ExtFloat::operator*=(const ExtFloat& rhs) {
  widen_to(rhs);
  mpfr_mul(value_, value_, rhs.value_, kRound);
  return *this;
}

ExtFloat& ExtFloat::operator/=(const ExtFloat& rhs) {
  widen_to(rhs);
  mpfr_div(value_, value_, rhs.value_, kRound);
  return *this;
}

ExtFloat& ExtFloat::operator+=(double rhs) {
  mpfr_add_d(value_, value_, rhs, kRound);
  return *this;
}

ExtFloat& ExtFloat::operator-=(double rhs) {
  mpfr_sub_d(value_, value_, rhs, kRound);
  return *this;
}

ExtFloat& ExtFloat::operator*=(double rhs) {
  mpfr_mul_d(value_, value_, rhs, kRound);
  return *this;
}

ExtFloat& ExtFloat::operator/=(double rhs) {
  mpfr_div_d(value_, value_, rhs, kRound);
  return *this;
}

ExtFloat& ExtFloat::add_product(const ExtFloat& a, const ExtFloat& b) {
  mpfr_fma(value_, a.value_, b.value_, value_, kRound);
  return *this;
}

ExtFloat& ExtFloat::sub_product(const ExtFloat& a, const ExtFloat& b) {
  // this - a*b == -(a*b - this)
  mpfr_fms(value_, a.value_, b.value_, value_, kRound);
  mpfr_neg(value_, value_, kRound);
  return *this;
}

ExtFloat ExtFloat::operator-() const {
  ExtFloat r(*this);
  mpfr_neg(r.value_, r.value_, kRound);
  return r;
}

bool operator==(const ExtFloat& a, const ExtFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const ExtFloat& a, const ExtFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const ExtFloat& a, double b) { return (a <=> b) == std::partial_ordering::equivalent; }

std::partial_ordering operator<=>(const ExtFloat& a, double b) {
  if (mpfr_nan_p(a.value_) || b != b) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_d(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

ExtFloat abs(ExtFloat x) {
  mpfr_abs(x.value_, x.value_, kRound);
  return x;
}

ExtFloat sqrt(ExtFloat x) {
  mpfr_sqrt(x.value_, x.value_, kRound);
  return x;
}

ExtFloat sin(ExtFloat x) {
  mpfr_sin(x.value_, x.value_, kRound);
  return x;
}

ExtFloat cos(ExtFloat x) {
  mpfr_cos(x.value_, x.value_, kRound);
  return x;
}

ExtFloat exp(ExtFloat x) {
  mpfr_exp(x.value_, x.value_, kRound);
  return x;
}

ExtFloat log(ExtFloat x) {
  mpfr_log(x.value_, x.value_, kRound);
  return x;
}

std::ostream& operator<<(std::ostream& os, const ExtFloat& x) {
  const auto digits = os.precision() > 0 ? static_cast<int>(os.precision()) : 20;
  return os << x.str(digits);
}

}  // namespace lis
