#include <cmath>
#include <numbers>

#include <doctest.h>

#include "xxz/quadrature.hpp"

using xxz::quad::gauss_kronrod;

TEST_CASE("polynomials are integrated exactly") {
  const auto r = gauss_kronrod([](double x) { return std::complex<double>(x * x * x - x, 0.0); },
                               0.0, 2.0);
  CHECK(r.converged);
  CHECK(r.value.real() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("complex integrand with a peak") {
  // int_{-inf}^{inf} dx / (x^2 + 1) truncated to [-1e3, 1e3]
  const auto r = gauss_kronrod(
      [](double x) { return std::complex<double>(1.0, 0.0) / std::complex<double>(x * x + 1.0, 0.0); },
      -1e3, 1e3);
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - 2.0 * std::atan(1e3)) < 1e-11);
  CHECK(std::abs(r.value.imag()) < 1e-15);
}

TEST_CASE("oscillatory complex exponential") {
  const auto r = gauss_kronrod([](double x) { return std::exp(std::complex<double>(0.0, 5.0 * x)); },
                               0.0, std::numbers::pi);
  CHECK(r.converged);
  // (e^{5 i pi} - 1) / (5 i) = 2i/5
  CHECK(std::abs(r.value - std::complex<double>(0.0, 0.4)) < 1e-12);
}

TEST_CASE("interval budget exhaustion is reported") {
  xxz::quad::Options opts;
  opts.max_intervals = 3;
  const auto r = gauss_kronrod([](double x) { return std::complex<double>(std::sqrt(x), 0.0); },
                               0.0, 1.0, opts);
  CHECK_FALSE(r.converged);
  CHECK(r.intervals <= 3);
}
