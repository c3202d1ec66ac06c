#include "lis/precision.hpp"

#include <charconv>

#include "lis/errors.hpp"

namespace lis {

Precision Precision::extended(unsigned mantissa_bits) {
  if (mantissa_bits < kMinExtendedBits) {
    throw InvalidArgument("extended precision needs at least 64 mantissa bits, got " +
                          std::to_string(mantissa_bits));
  }
  return Precision(Mode::Extended, mantissa_bits);
}

Precision Precision::parse(std::string_view text) {
  if (text == "double") return machine_double();
  if (text == "ext") return extended();
  constexpr std::string_view prefix = "ext:";
  if (text.starts_with(prefix)) {
    const auto digits = text.substr(prefix.size());
    unsigned bits = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits);
    if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty()) {
      return extended(bits);
    }
  }
  throw InvalidArgument("precision must be 'double' or 'ext:<bits>', got '" + std::string(text) + "'");
}

std::string Precision::to_string() const {
  return is_extended() ? "ext:" + std::to_string(bits_) : "double";
}

}  // namespace lis
