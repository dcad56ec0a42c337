#include <cmath>
#include <numbers>

#include <doctest.h>

#include "xxz/correlations.hpp"
#include "xxz/errors.hpp"

using namespace xxz;
using namespace xxz::correlations;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("nearest-neighbor correlators against independent references") {
  struct Ref {
    double delta, zz, xx;
  };
  // Derivatives of the real-axis ground-state integral at 30 digits.
  const Ref refs[] = {
      {0.3, -0.46331830921063, -0.632327789051394},
      {-0.5, -0.289445295395935, -0.621399429525642},
      {-0.7, -0.227086564492649, -0.602556744279762},
      {0.9, -0.572311681662021, -0.59967654738953},
      {0.5, -0.5, -0.625},
  };
  for (const auto& ref : refs) {
    CAPTURE(ref.delta);
    CHECK(std::abs(zz_nn(Anisotropy(ref.delta)) - ref.zz) < 1e-9);
    CHECK(std::abs(xx_nn(Anisotropy(ref.delta)) - ref.xx) < 1e-9);
  }
  CHECK(std::abs(zz_nn(Anisotropy(0.0)) + 4.0 / (kPi * kPi)) < 1e-10);
  CHECK(std::abs(xx_nn(Anisotropy(0.0)) + 2.0 / kPi) < 1e-10);
}

TEST_CASE("energy identity ties the correlators together") {
  for (double d : {-0.9, -0.3, 0.0, 0.4, 0.8}) {
    const double e0 = bethe::ground_energy(Anisotropy(d)).e0;
    CHECK(std::abs(2.0 * xx_nn(Anisotropy(d)) + d * zz_nn(Anisotropy(d)) - 4.0 * e0) < 1e-10);
  }
}

TEST_CASE("analytic and finite-difference slopes agree") {
  for (double d : {-0.95, -0.5, 0.0, 0.5, 0.95}) {
    CAPTURE(d);
    const double a = zz_nn(Anisotropy(d), DerivativeMethod::Analytic);
    const double f = zz_nn(Anisotropy(d), DerivativeMethod::FiniteDifference);
    CHECK(std::abs(a - f) < kMethodAgreement);
    CHECK(zz_nn(Anisotropy(d), DerivativeMethod::CrossChecked) == a);
  }
}

TEST_CASE("ferro phase and the transition point") {
  CHECK(zz_nn(Anisotropy(-2.0)) == 1.0);
  CHECK(xx_nn(Anisotropy(-2.0)) == 0.0);
  CHECK_THROWS_AS(zz_nn(Anisotropy(-1.0)), DomainError);
  CHECK(zz_nn_one_sided(Anisotropy(-1.0), Side::Left) == 1.0);
  CHECK(std::abs(zz_nn_one_sided(Anisotropy(-1.0), Side::Right)) < 1e-3);
  CHECK(std::abs(xx_nn_one_sided(Anisotropy(-1.0), Side::Right) + 0.5) < 1e-3);
  CHECK(xx_nn_one_sided(Anisotropy(-1.0), Side::Left) == 0.0);
}

TEST_CASE("heisenberg point as a limit") {
  const double zz = zz_nn(Anisotropy(1.0));
  const double target = (4.0 * (0.25 - std::log(2.0))) / 3.0;
  CHECK(std::abs(zz - target) < 1e-4);
  CHECK(std::abs(xx_nn(Anisotropy(1.0)) - target) < 1e-4);
}

TEST_CASE("correlators_at") {
  const auto c = correlators_at(Anisotropy(0.3), 1, false);
  CHECK(c.txx == c.tyy);
  CHECK_FALSE(c.approximate);
  CHECK(c.m == 0.0);

  const auto f = correlators_at(Anisotropy(-2.0), 2, true);
  CHECK(f.tzz == 1.0);
  CHECK(f.m == 1.0);
  CHECK(f.pz == 1.0);
  const auto down = correlators_at(Anisotropy(-2.0), 1, true, BrokenBranch::Down);
  CHECK(down.m == -1.0);
  CHECK(correlators_at(Anisotropy(-2.0), 1, false).m == 0.0);

  CHECK_THROWS_AS(correlators_at(Anisotropy(0.0), 4, false), UnsupportedSeparation);
  CHECK_THROWS_AS(correlators_at(Anisotropy(0.0), 0, false), UnsupportedSeparation);
  CHECK_THROWS_AS(correlators_at(Anisotropy(-1.0), 1, false), DomainError);
  CHECK_THROWS_AS(correlators_at(Anisotropy(1.2), 1, false), DomainError);
}

TEST_CASE("longer separations from extrapolated finite chains") {
  // Free-fermion values at delta = 0: Toeplitz determinants of the
  // hopping correlations, and -4 / (pi r)^2 for odd r.
  const int rs[] = {2, 3};
  const auto c = extrapolated_correlators(Anisotropy(0.0), rs);
  CHECK(c[0].approximate);
  CHECK(std::abs(c[0].txx - 4.0 / (kPi * kPi)) < 5e-3);
  CHECK(std::abs(c[0].tzz) < 1e-10);
  CHECK(std::abs(c[1].txx + 0.34401636728746127) < 5e-3);
  CHECK(std::abs(c[1].tzz + 4.0 / (9.0 * kPi * kPi)) < 5e-3);

  // delta = 1/2: next-nearest neighbors are 7/64 (zz) and 41/128 (xx).
  const auto h = correlators_at(Anisotropy(0.5), 2, false);
  CHECK(std::abs(h.tzz - 7.0 / 64.0) < 2e-3);
  CHECK(std::abs(h.txx - 41.0 / 128.0) < 2e-3);
}
