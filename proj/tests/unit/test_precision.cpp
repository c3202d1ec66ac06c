#include <doctest.h>

#include <type_traits>

#include "lis/errors.hpp"
#include "lis/precision.hpp"

using lis::Precision;

TEST_CASE("precision parsing") {
  CHECK(Precision::parse("double") == Precision::machine_double());
  CHECK(Precision::parse("double").mantissa_bits() == 53);
  CHECK(Precision::parse("ext") == Precision::extended(256));
  CHECK(Precision::parse("ext:512").mantissa_bits() == 512);
  CHECK(Precision::parse("ext:512").is_extended());
  CHECK(Precision::extended(128).to_string() == "ext:128");
  CHECK(Precision::machine_double().to_string() == "double");
  CHECK_THROWS_AS(Precision::parse("quad"), lis::InvalidArgument);
  CHECK_THROWS_AS(Precision::parse("ext:"), lis::InvalidArgument);
  CHECK_THROWS_AS(Precision::parse("ext:32"), lis::InvalidArgument);
  CHECK_THROWS_AS(Precision::extended(63), lis::InvalidArgument);
}

TEST_CASE("with_precision dispatches on the mode and scopes the width") {
  const bool is_double = lis::with_precision(Precision::machine_double(),
                                             []<typename Real>() { return std::is_same_v<Real, double>; });
  CHECK(is_double);
  const long bits = lis::with_precision(Precision::extended(320), []<typename Real>() {
    CHECK(std::is_same_v<Real, lis::ExtFloat>);
    return lis::ext_working_bits();
  });
  CHECK(bits == 320);
}
