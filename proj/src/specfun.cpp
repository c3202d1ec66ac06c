#include "lis/specfun.hpp"

namespace lis::specfun {

double sinc_unnormalized(double x, const Precision& precision) {
  return with_precision(precision, [x]<typename Real>() { return to_double(sinc_unnormalized(Real(x))); });
}

double j1_over_x(double x, const Precision& precision) {
  return with_precision(precision, [x]<typename Real>() { return to_double(j1_over_x(Real(x))); });
}

}  // namespace lis::specfun
