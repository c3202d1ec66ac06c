#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "lis/channel.hpp"
#include "lis/metrics.hpp"
#include "lis/precoding.hpp"

using namespace lis;

namespace {
const double kLambda = wavelength_for(2.6e9);

ComplexVector from(std::initializer_list<std::complex<double>> v) {
  const std::vector<std::complex<double>> tmp(v);
  return make_complex_vector(tmp);
}

ImpedanceMatrix diag(std::initializer_list<double> d) {
  Matrix<double> m(d.size(), d.size());
  std::size_t k = 0;
  for (double v : d) {
    m(k, k) = v;
    ++k;
  }
  return {m, ElementKind::Isotropic};
}

ComplexVector scaled(const ComplexVector& v, std::complex<double> a) {
  ComplexVector out(v.size());
  for (std::size_t n = 0; n < v.size(); ++n) {
    const auto x = a * v.at(n);
    out.set(n, x.real(), x.imag());
  }
  return out;
}

const LinkBudget kUnit{};
}  // namespace

TEST_CASE("nCA-MF returns the channel") {
  const auto h = from({1.0, {0.0, 1.0}});
  const auto i = nca_mf(h);
  CHECK(i.at(0) == std::complex<double>(1, 0));
  CHECK(i.at(1) == std::complex<double>(0, 1));
  const auto a = std::complex<double>(2, -3);
  const auto lhs = nca_mf(scaled(h, a));
  for (std::size_t n = 0; n < 2; ++n) CHECK(std::abs(lhs.at(n) - a * i.at(n)) < 1e-15);
  CHECK_THROWS_AS(nca_mf(ComplexVector(3)), DegenerateInput);
}

TEST_CASE("CA-MF on simple coupling matrices") {
  const auto h = from({1.0, 1.0});
  const auto i = ca_mf(diag({1, 4}), h);
  CHECK(i.at(0) == std::complex<double>(1, 0));
  CHECK(i.at(1) == std::complex<double>(0.25, 0));
  const auto hj = from({{1, 2}, {-0.5, 0.25}, 3.0});
  const auto same = ca_mf(diag({1, 1, 1}), hj);
  for (std::size_t n = 0; n < 3; ++n) CHECK(std::abs(same.at(n) - hj.at(n)) < 1e-15);
}

TEST_CASE("CA-pMF with no truncation equals CA-MF") {
  const auto g = linear_array(16, 0.4 * kLambda, ElementKind::Planar, kLambda);
  const auto z = impedance(g);
  const auto h = channel(g, {6, 1, 2});
  const auto a = ca_pmf(z, h, 0.0);
  const auto b = ca_mf(z, h);
  for (std::size_t n = 0; n < 16; ++n) CHECK(std::abs(a.at(n) - b.at(n)) <= 1e-8 * std::abs(b.at(n)) + 1e-12);
  CHECK_THROWS_AS(ca_pmf(z, h, z.eigen().values.front()), EmptySpectrum);
  CHECK_THROWS_AS(ca_pmf(z, h, -1.0), InvalidArgument);
  CHECK_THROWS_AS(ca_pmf_modes(z, h, 0), EmptySpectrum);
  CHECK_THROWS_AS(ca_pmf_modes(z, h, 17), InvalidArgument);
}

TEST_CASE("CA-pMF equals the explicit truncated inverse times h") {
  const auto g = linear_array(12, 0.3 * kLambda, ElementKind::Isotropic, kLambda);
  const auto z = impedance(g);
  const auto h = channel(g, {5, 0, 1});
  const auto pinv = truncated_inverse(z, 1e-6);
  const auto i = ca_pmf(z, h, 1e-6);
  const auto re = multiply(pinv, std::span<const double>(h.re));
  const auto im = multiply(pinv, std::span<const double>(h.im));
  for (std::size_t n = 0; n < 12; ++n) {
    CHECK(i.re[n] == doctest::Approx(re[n]).epsilon(1e-10));
    CHECK(i.im[n] == doctest::Approx(im[n]).epsilon(1e-10));
  }
}

TEST_CASE("power normalization") {
  const auto i = power_normalize(from({3.0, {0.0, 4.0}}), diag({1, 1}));
  CHECK(std::abs(i.at(0) - std::complex<double>(0.6, 0)) < 1e-15);
  CHECK(std::abs(i.at(1) - std::complex<double>(0, 0.8)) < 1e-15);
  const auto again = power_normalize(i, diag({1, 1}));
  for (std::size_t n = 0; n < 2; ++n) CHECK(std::abs(again.at(n) - i.at(n)) < 1e-15);

  const auto g = linear_array(20, 0.35 * kLambda, ElementKind::Planar, kLambda);
  const auto z = impedance(g);
  const auto hat = power_normalize(ca_mf(z, channel(g, {10, 0, 0})), z);
  CHECK(quadratic_form(z.entries(), hat) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(power_normalize(ComplexVector(20), z), NonRadiatingCurrent);
}

TEST_CASE("identity coupling makes all schemes equal") {
  const auto g = linear_array(20, 0.5 * kLambda, ElementKind::Isotropic, kLambda);
  const auto z = impedance(g);
  const auto h = channel(g, {4, 2, -1});
  const double a = snr(nca_mf(h), z, h, kUnit);
  CHECK(snr(ca_mf(z, h), z, h, kUnit) == doctest::Approx(a).epsilon(1e-12));
  CHECK(snr(ca_pmf(z, h, 1e-9), z, h, kUnit) == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("SNR ordering and scale invariance on coupled arrays") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-3, 3);
  for (auto kind : {ElementKind::Isotropic, ElementKind::Planar}) {
    for (double f : {0.45, 0.4, 0.35}) {
      const auto g = linear_array(15, f * kLambda, kind, kLambda);
      const auto z = impedance(g);
      const Vec3 o{2 + std::abs(u(rng)), u(rng), u(rng)};
      const auto h = channel(g, o);
      const double best = snr(ca_mf(z, h), z, h, kUnit);
      const double naive = snr(nca_mf(h), z, h, kUnit);
      CHECK(best >= naive * (1 - 1e-10));
      CHECK(naive >= 0.0);
      for (double t : {1e-2, 1e-4, 1e-6}) CHECK(best >= snr(ca_pmf(z, h, t), z, h, kUnit) * (1 - 1e-10));
      const auto i = ca_pmf(z, h, 1e-4);
      const double base = snr(i, z, h, kUnit);
      for (auto a : {std::complex<double>(1e-3, 0), std::complex<double>(-2, 7), std::complex<double>(0, 1e5)}) {
        CHECK(snr(scaled(i, a), z, h, kUnit) == doctest::Approx(base).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("CA-MF beats random perturbations of itself") {
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  const auto geom = linear_array(10, 0.38 * kLambda, ElementKind::Planar, kLambda);
  const auto z = impedance(geom);
  const auto h = channel(geom, {8, 0.5, 1});
  const auto best = ca_mf(z, h);
  const double top = snr(best, z, h, kUnit);
  for (int trial = 0; trial < 200; ++trial) {
    ComplexVector p = best;
    const double eps = std::pow(10.0, -trial % 6);
    for (std::size_t n = 0; n < p.size(); ++n) {
      p.re[n] += eps * std::abs(best.re[n] + 1e-3) * g(rng);
      p.im[n] += eps * std::abs(best.im[n] + 1e-3) * g(rng);
    }
    CHECK(snr(p, z, h, kUnit) <= top * (1 + 1e-10));
  }
}

TEST_CASE("extended CA-MF beats the matched filter on the 0.3 wavelength line") {
  ExtPrecisionScope scope(256);
  const auto g = linear_array(20, 0.3 * kLambda, ElementKind::Isotropic, kLambda);
  const auto z = impedance<ExtFloat>(g);
  const auto h = channel<ExtFloat>(g, {10, 0, 0});
  CHECK(snr(ca_mf(z, h), z, h, kUnit) > snr(nca_mf(h), z, h, kUnit));
}

TEST_CASE("retaining more modes never lowers directivity and raises current") {
  ExtPrecisionScope scope(256);
  const Vec3 o{10, 0, 0};
  const auto g = linear_array(20, 0.3 * kLambda, ElementKind::Isotropic, kLambda);
  const auto z = impedance<ExtFloat>(g);
  const auto h = channel<ExtFloat>(g, o);
  double prev_d = 0.0, prev_p = 0.0;
  for (std::size_t m = 1; m <= 20; ++m) {
    const auto i = ca_pmf_modes(z, h, m);
    const double d = directivity(i, z, h, o, kLambda);
    const double p = excitation_power(i);
    CHECK(d >= prev_d);
    CHECK(p >= prev_p);
    prev_d = d;
    prev_p = p;
  }
}
