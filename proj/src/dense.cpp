#include "lis/dense.hpp"

namespace lis {

ComplexVector make_complex_vector(std::span<const std::complex<double>> values) {
  ComplexVector v(values.size());
  for (std::size_t n = 0; n < values.size(); ++n) v.set(n, values[n].real(), values[n].imag());
  return v;
}

BasicComplexVector<ExtFloat> to_extended(const ComplexVector& v) {
  BasicComplexVector<ExtFloat> out(v.size());
  for (std::size_t n = 0; n < v.size(); ++n) out.set(n, ExtFloat(v.re[n]), ExtFloat(v.im[n]));
  return out;
}

}  // namespace lis
