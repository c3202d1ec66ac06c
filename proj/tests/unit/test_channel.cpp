#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "../support/oracles.hpp"
#include "lis/channel.hpp"
#include "lis/coupling.hpp"

using namespace lis;

namespace {
const double kLambda = wavelength_for(2.6e9);

ComplexVector random_currents(std::size_t n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, g(rng), g(rng));
  return v;
}
}  // namespace

TEST_CASE("channel against a direct complex evaluation") {
  for (auto kind : {ElementKind::Isotropic, ElementKind::Planar}) {
    const auto g = planar_grid(0.3, 0.3, 0.4 * kLambda, 0.35 * kLambda, kind, kLambda, 1000);
    const Vec3 o{3.0, -1.2, 0.7};
    const auto h = channel(g, o);
    const auto ref = testing::reference_channel(g, o, kind == ElementKind::Planar);
    for (std::size_t n = 0; n < g.size(); ++n) CHECK(std::abs(h.at(n) - ref[n]) <= 1e-14 * std::abs(ref[n]));
  }
}

TEST_CASE("channel magnitude is the free-space path gain") {
  const auto g = linear_array(1, 0.1, ElementKind::Isotropic, kLambda);
  const auto h = channel(g, {7.0, 0, 0});
  CHECK(std::abs(h.at(0)) == doctest::Approx(kLambda / (4 * std::numbers::pi * 7.0)).epsilon(1e-15));
  const auto hp = channel_planar(linear_array(1, 0.1, ElementKind::Planar, kLambda), {3.0, 4.0, 0});
  CHECK(std::abs(hp.at(0)) == doctest::Approx(kLambda / (4 * std::numbers::pi * 5.0) * std::sqrt(0.6)).epsilon(1e-15));
}

TEST_CASE("channel domain errors") {
  const auto iso = linear_array(3, 0.1, ElementKind::Isotropic, kLambda);
  CHECK_THROWS_AS(channel(iso, {0, 0, 0.1}), DomainError);
  CHECK_NOTHROW(channel(iso, {-5, 0, 0}));
  const auto planar = linear_array(3, 0.1, ElementKind::Planar, kLambda);
  CHECK_THROWS_AS(channel(planar, {0, 0, 5}), DomainError);
  CHECK_THROWS_AS(channel(planar, {-1, 0, 0}), DomainError);
  CHECK_THROWS_AS(channel(planar, {NAN, 0, 0}), InvalidArgument);
}

TEST_CASE("extended channel rounds to the double channel") {
  const auto g = linear_array(8, 0.2 * kLambda, ElementKind::Planar, kLambda);
  const auto hd = channel(g, {10, 1, 2});
  ExtPrecisionScope scope(256);
  const auto he = to_double_vector(channel<ExtFloat>(g, {10, 1, 2}));
  // The double phase k·d carries an absolute error of a few ulps of k·d.
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t n = 0; n < 8; ++n) {
    const double kd = g.wavenumber() * (Vec3{10, 1, 2} - g.position(n)).norm();
    CHECK(std::abs(he.at(n) - hd.at(n)) <= 4 * eps * (1 + kd) * std::abs(hd.at(n)));
  }
}

TEST_CASE("field strength scales the inner product") {
  const auto g = linear_array(4, 0.5 * kLambda, ElementKind::Isotropic, kLambda);
  const Vec3 o{10, 0, 0};
  const auto h = channel(g, o);
  const FieldModel model{2.0, 100.0};
  const auto e = field_at(o, g, h, model);
  const auto ih = inner(h, h);
  const double scale = std::sqrt(100.0) * std::sqrt(4 * std::numbers::pi * 2.0) / kLambda;
  CHECK(e.real() == doctest::Approx(scale * ih.re));
  CHECK(std::abs(e.imag()) < 1e-20);
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  for (std::size_t n : {1u, 2u, 5u, 16u, 64u}) {
    const auto rule = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t deg = 0; deg < 2 * n; ++deg) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], static_cast<double>(deg));
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1.0);
      CHECK(std::abs(acc - exact) < 1e-13);
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), InvalidArgument);
}

TEST_CASE("sphere quadrature reproduces the coupling quadratic form") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> frac(0.1, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    for (auto kind : {ElementKind::Isotropic, ElementKind::Planar}) {
      const double s = frac(rng) * kLambda;
      const auto g = planar_grid(2 * s, s, s, s, kind, kLambda, 64);
      const auto i = random_currents(g.size(), rng);
      const double exact = quadratic_form(impedance(g).entries(), i);
      const auto q = radiated_power_quadrature(g, i, {}, 64);
      CHECK(q.power == doctest::Approx(exact).epsilon(1e-9));
      CHECK_FALSE(q.accuracy_warning);
    }
  }
}

TEST_CASE("quadrature scales with beta and flags coarse orders") {
  const auto g = planar_grid(0.4, 0.4, 0.5 * kLambda, 0.5 * kLambda, ElementKind::Isotropic, kLambda, 100);
  std::mt19937 rng(1);
  auto i = random_currents(g.size(), rng);
  i = ComplexVector(g.size());
  i.set(0, 1, 0);
  i.set(g.size() - 1, 1, 0);
  const auto base = radiated_power_quadrature(g, i, {1.0, 1.0}, 32);
  const auto scaled = radiated_power_quadrature(g, i, {3.0, 1.0}, 32);
  CHECK(scaled.power == doctest::Approx(3.0 * base.power));
  CHECK(radiated_power_quadrature(g, random_currents(g.size(), rng), {}, 16).accuracy_warning);
}

TEST_CASE("quadrature limits") {
  const auto big = planar_grid(0.5, 0.5, 0.3 * kLambda, 0.3 * kLambda, ElementKind::Isotropic, kLambda, 1000);
  CHECK_THROWS_AS(radiated_power_quadrature(big, ComplexVector(big.size()), {}, 32), InvalidArgument);
  const auto small = linear_array(3, 0.1, ElementKind::Isotropic, kLambda);
  CHECK_THROWS_AS(radiated_power_quadrature(small, ComplexVector(3), {}, 8), InvalidArgument);
  CHECK_THROWS_AS(radiated_power_quadrature(small, ComplexVector(2), {}, 32), InvalidArgument);
}
