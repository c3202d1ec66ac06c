#include <doctest.h>

#include <cmath>
#include <sstream>
#include <thread>

#include "../support/oracles.hpp"
#include "lis/channel.hpp"
#include "lis/coupling.hpp"

using namespace lis;

namespace {
const double kLambda = wavelength_for(2.6e9);

// Independent 400-bit eigensolve of the 20-element, 0.3λ line (mpmath).
constexpr double kFrozenKappaIsotropic = 17988292210.840883;
constexpr double kFrozenSminIsotropic = 9.265285704344006e-11;
constexpr double kFrozenKappaPlanar = 42797304351.5109;

double max_abs_diff(const Matrix<double>& a, const Matrix<double>& b) {
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  return worst;
}
}  // namespace

TEST_CASE("half-wavelength isotropic line is uncoupled") {
  const auto z = impedance(linear_array(20, 0.5 * kLambda, ElementKind::Isotropic, kLambda));
  CHECK(max_abs_diff(z.entries(), Matrix<double>::identity(20)) < 1e-12);
  CHECK(condition_number(z) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("one-wavelength isotropic line sits on the sinc zeros") {
  const auto z = impedance(linear_array(20, kLambda, ElementKind::Isotropic, kLambda));
  CHECK(max_abs_diff(z.entries(), Matrix<double>::identity(20)) < 1e-12);
}

TEST_CASE("Z entries against standard library special functions") {
  for (auto kind : {ElementKind::Isotropic, ElementKind::Planar}) {
    const auto g = planar_grid(0.3, 0.2, 0.31 * kLambda, 0.27 * kLambda, kind, kLambda, 1000);
    const auto z = impedance(g);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) {
        const double kr = g.wavenumber() * distance(g.position(i), g.position(j));
        CHECK(std::abs(z(i, j) - testing::reference_coupling(kind, kr)) < 1e-14);
        CHECK(z(i, j) == z(j, i));
      }
  }
  CHECK(impedance(linear_array(3, 0.1, ElementKind::Planar, kLambda))(1, 1) == 0.5);
}

TEST_CASE("extended and double Z agree to double rounding") {
  const auto g = linear_array(12, 0.37 * kLambda, ElementKind::Planar, kLambda);
  const auto zd = impedance(g);
  ExtPrecisionScope scope(256);
  const auto ze = impedance<ExtFloat>(g);
  CHECK(ze.precision() == Precision::extended(256));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(ze(i, j).to_double() - zd(i, j)) < 1e-15);
}

TEST_CASE("frozen conditioning of the 20-element 0.3 wavelength line") {
  ExtPrecisionScope scope(256);
  const auto iso = impedance<ExtFloat>(linear_array(20, 0.3 * kLambda, ElementKind::Isotropic, kLambda));
  CHECK(condition_number(iso) == doctest::Approx(kFrozenKappaIsotropic).epsilon(1e-9));
  CHECK(iso.eigen().values.back().to_double() == doctest::Approx(kFrozenSminIsotropic).epsilon(1e-9));
  CHECK(retained_mode_count(iso, 1e-9) == 19);
  const auto planar = impedance<ExtFloat>(linear_array(20, 0.3 * kLambda, ElementKind::Planar, kLambda));
  CHECK(condition_number(planar) == doctest::Approx(kFrozenKappaPlanar).epsilon(1e-9));
}

TEST_CASE("double conditioning tracks the extended value while it is resolvable") {
  const auto g = linear_array(20, 0.4 * kLambda, ElementKind::Isotropic, kLambda);
  const double kd = condition_number(impedance(g));
  ExtPrecisionScope scope(256);
  const double ke = condition_number(impedance<ExtFloat>(g));
  CHECK(kd == doctest::Approx(ke).epsilon(1e-9));
}

TEST_CASE("clamped spectrum gives infinite condition number") {
  const auto z = impedance(planar_grid(0.5, 0.5, 0.25 * kLambda, 0.25 * kLambda, ElementKind::Planar, kLambda, 1000));
  CHECK(std::isinf(condition_number(z)));
  for (const auto& s : z.eigen().values) CHECK(s >= 0.0);
}

TEST_CASE("zero matrix has no condition number") {
  const ImpedanceMatrix z(Matrix<double>(3, 3), ElementKind::Isotropic);
  CHECK_THROWS_AS(condition_number(z), DegenerateInput);
}

TEST_CASE("truncated inverse") {
  const auto z = impedance(linear_array(10, 0.42 * kLambda, ElementKind::Isotropic, kLambda));
  const auto pinv = truncated_inverse(z, 0.0);
  for (std::size_t r = 0; r < 10; ++r)
    for (std::size_t c = 0; c < 10; ++c) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 10; ++k) acc += z(r, k) * pinv(k, c);
      CHECK(std::abs(acc - (r == c ? 1.0 : 0.0)) < 1e-10);
    }
  const double smax = z.eigen().values.front();
  CHECK_THROWS_AS(truncated_inverse(z, smax), EmptySpectrum);
  CHECK_THROWS_AS(truncated_inverse(z, -1.0), InvalidArgument);
  CHECK_THROWS_AS(truncated_inverse_modes(z, 0), EmptySpectrum);
  CHECK_THROWS_AS(truncated_inverse_modes(z, 11), InvalidArgument);
  const std::size_t m = retained_mode_count(z, 0.5);
  const auto a = truncated_inverse(z, 0.5);
  const auto b = truncated_inverse_modes(z, m);
  for (std::size_t r = 0; r < 10; ++r)
    for (std::size_t c = 0; c < 10; ++c) CHECK(a(r, c) == b(r, c));
}

TEST_CASE("strict threshold semantics") {
  Matrix<double> d(3, 3);
  d(0, 0) = 4;
  d(1, 1) = 1e-9;
  d(2, 2) = 2e-9;
  const ImpedanceMatrix z(d, ElementKind::Isotropic);
  CHECK(retained_mode_count(z, 1e-9) == 2);
  CHECK(retained_mode_count(z, 0.0) == 3);
}

TEST_CASE("solve on a diagonal matrix") {
  Matrix<double> d(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 4;
  const ImpedanceMatrix z(d, ElementKind::Isotropic);
  ComplexVector h(2);
  h.set(0, 1, 0);
  h.set(1, 1, 0);
  const auto x = solve(z, h);
  CHECK(x.at(0) == std::complex<double>(1, 0));
  CHECK(x.at(1) == std::complex<double>(0.25, 0));
  CHECK_THROWS_AS(solve(z, ComplexVector(3)), InvalidArgument);
}

TEST_CASE("extended solve succeeds where double breaks down") {
  const auto g = planar_grid(0.5, 0.5, 0.3 * kLambda, 0.3 * kLambda, ElementKind::Planar, kLambda, 1000);
  const Vec3 o{10, 0, 0};
  CHECK_THROWS_AS(solve(impedance(g), channel(g, o)), IllConditionedSolve);

  ExtPrecisionScope scope(256);
  const auto line = linear_array(20, 0.3 * kLambda, ElementKind::Isotropic, kLambda);
  const auto x = solve(impedance<ExtFloat>(line), channel<ExtFloat>(line, o));
  CHECK(x.size() == 20);
}

TEST_CASE("ill-conditioned solve carries diagnostics") {
  const auto g = planar_grid(0.5, 0.5, 0.3 * kLambda, 0.3 * kLambda, ElementKind::Planar, kLambda, 1000);
  try {
    (void)solve(impedance(g), channel(g, {10, 0, 0}));
    FAIL("expected IllConditionedSolve");
  } catch (const IllConditionedSolve& e) {
    CHECK(e.condition_estimate() > 1e12);
  }
}

TEST_CASE("matrix text round trip is exact") {
  const auto z = impedance(linear_array(7, 0.33 * kLambda, ElementKind::Planar, kLambda));
  std::stringstream buf;
  write_matrix(buf, z.entries());
  const auto back = read_matrix(buf);
  REQUIRE(back.rows() == 7);
  CHECK(max_abs_diff(back, z.entries()) == 0.0);
  std::stringstream ragged("1 2\n3\n");
  CHECK_THROWS_AS(read_matrix(ragged), InvalidArgument);
  std::stringstream junk("1 x\n");
  CHECK_THROWS_AS(read_matrix(junk), InvalidArgument);
}

TEST_CASE("eigen cache is shared and safe under concurrent readers") {
  const auto z = impedance(linear_array(30, 0.3 * kLambda, ElementKind::Isotropic, kLambda));
  const auto copy = z;
  std::vector<const SymmetricEigen<double>*> seen(8);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < seen.size(); ++t) threads.emplace_back([&, t] { seen[t] = &(t % 2 ? copy : z).eigen(); });
  for (auto& t : threads) t.join();
  for (auto* p : seen) CHECK(p == seen.front());
}

TEST_CASE("non-square input is rejected") {
  CHECK_THROWS_AS(ImpedanceMatrix(Matrix<double>(2, 3), ElementKind::Isotropic), InvalidArgument);
  CHECK_THROWS_AS(ImpedanceMatrix(Matrix<double>(0, 0), ElementKind::Isotropic), InvalidArgument);
}
