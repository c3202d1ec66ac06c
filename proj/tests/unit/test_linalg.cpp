#include <doctest.h>

#include <cmath>
#include <random>

#include "lis/coupling.hpp"
#include "lis/errors.hpp"
#include "lis/linalg.hpp"

using namespace lis;

namespace {

Matrix<double> random_spd(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Matrix<double> b(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) b(r, c) = g(rng);
  Matrix<double> a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      double acc = r == c ? 0.5 : 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += b(r, k) * b(c, k);
      a(r, c) = acc;
    }
  return a;
}

double reconstruction_error(const Matrix<double>& a, const SymmetricEigen<double>& e) {
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      double acc = 0.0;
      for (std::size_t k = 0; k < e.values.size(); ++k) acc += e.vectors(k, r) * e.values[k] * e.vectors(k, c);
      worst = std::max(worst, std::abs(acc - a(r, c)));
    }
  return worst;
}

}  // namespace

TEST_CASE("Jacobi on a 2x2 with known eigenpairs") {
  Matrix<double> a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = a(1, 0) = 1;
  a(1, 1) = 2;
  const auto e = jacobi_eigen(a);
  CHECK(e.values[0] == doctest::Approx(3.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(std::sqrt(0.5)));
  CHECK(e.vectors(0, 0) * e.vectors(0, 1) > 0.0);
}

TEST_CASE("Jacobi leaves a diagonal matrix alone") {
  Matrix<double> a(3, 3);
  a(0, 0) = 1;
  a(1, 1) = 5;
  a(2, 2) = 3;
  const auto e = jacobi_eigen(a);
  CHECK(e.sweeps == 1);
  CHECK(e.values == std::vector<double>{5, 3, 1});
}

TEST_CASE("Jacobi reconstructs and is orthonormal") {
  const auto a = random_spd(30, 7);
  const auto e = jacobi_eigen(a);
  CHECK(reconstruction_error(a, e) < 1e-11);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) {
      double d = 0.0;
      for (std::size_t k = 0; k < 30; ++k) d += e.vectors(i, k) * e.vectors(j, k);
      CHECK(std::abs(d - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  for (std::size_t k = 1; k < e.values.size(); ++k) CHECK(e.values[k - 1] >= e.values[k]);
}

TEST_CASE("Jacobi reports non-convergence") {
  const auto a = random_spd(12, 3);
  CHECK_THROWS_AS(jacobi_eigen(a, 1), NumericalFailure);
}

TEST_CASE("LAPACK and Jacobi agree") {
  const auto a = random_spd(40, 11);
  const auto j = jacobi_eigen(a);
  const auto l = lapack_eigen(a);
  for (std::size_t k = 0; k < 40; ++k) CHECK(l.values[k] == doctest::Approx(j.values[k]).epsilon(1e-11));
  CHECK(reconstruction_error(a, l) < 1e-11);

  const double lambda = wavelength_for(2.6e9);
  const auto z = impedance(planar_grid(0.5, 0.5, 0.45 * lambda, 0.45 * lambda, ElementKind::Planar, lambda, 1000));
  const auto zj = jacobi_eigen(z.entries());
  const auto zl = lapack_eigen(z.entries());
  for (std::size_t k = 0; k < zj.values.size(); ++k) CHECK(std::abs(zl.values[k] - zj.values[k]) < 1e-13);
}

TEST_CASE("Cholesky solve with refinement") {
  const auto a = random_spd(25, 5);
  const auto f = cholesky(a);
  REQUIRE_FALSE(f.failed_at);
  std::vector<double> b(25);
  for (std::size_t i = 0; i < 25; ++i) b[i] = std::sin(1.0 + i);
  const auto x = cholesky_solve<double>(f.lower, b);
  const auto r = residual<double>(a, x, b);
  for (double v : r) CHECK(std::abs(v) < 1e-11);
  CHECK(f.condition_estimate() >= 1.0);
}

TEST_CASE("Cholesky flags an indefinite matrix") {
  Matrix<double> a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = a(1, 0) = 2;
  a(1, 1) = 1;
  const auto f = cholesky(a);
  REQUIRE(f.failed_at);
  CHECK(*f.failed_at == 1);
  CHECK(std::isinf(f.condition_estimate()));
}
