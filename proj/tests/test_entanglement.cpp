#include <cmath>
#include <random>

#include <doctest.h>

#include "xxz/entanglement.hpp"
#include "xxz/errors.hpp"

using namespace xxz;
using namespace xxz::entanglement;

namespace {

SpinCorrelators corr(double txx, double tzz, double pz = 0.0, double qz = 0.0) {
  SpinCorrelators c;
  c.txx = c.tyy = txx;
  c.tzz = tzz;
  c.pz = pz;
  c.qz = qz;
  c.m = pz;
  return c;
}

}  // namespace

TEST_CASE("Bell and product states") {
  // (|ud> + |du>) / sqrt 2
  const auto bell = corr(1.0, -1.0);
  CHECK(concurrence_symmetric(bell).c == doctest::Approx(1.0));
  CHECK(wootters_concurrence(rdm::build_two_spin(bell)) == doctest::Approx(1.0));
  // |uu>
  const auto up = corr(0.0, 1.0, 1.0, 1.0);
  CHECK(concurrence_ssb(up).c_tilde == 0.0);
  CHECK(concurrence_symmetric(up).c_tilde == -1.0);
  CHECK(wootters_concurrence(rdm::build_two_spin(up)) == 0.0);
  // (|uu><uu| + |dd><dd|) / 2
  const auto mixed = corr(0.0, 1.0);
  CHECK(concurrence_symmetric(mixed).c_tilde == -1.0);
  CHECK(concurrence_ssb(mixed).c_tilde == -1.0);
  CHECK(wootters_concurrence(rdm::build_two_spin(mixed)) == 0.0);
}

TEST_CASE("general two-qubit state") {
  // a|uu> + b|dd> has concurrence 2|ab|.
  const double a = 0.8, b = 0.6;
  Eigen::Vector4cd psi(a, 0, 0, b);
  const rdm::TwoSpinRDM rho(psi * psi.adjoint());
  CHECK(wootters_concurrence(rho) == doctest::Approx(2 * a * b).epsilon(1e-12));
  // Werner state p|singlet> + (1-p) I/4: max(0, (3p - 1)/2).
  for (double p : {0.2, 1.0 / 3.0, 0.5, 0.9}) {
    const auto w = corr(-p, -p);
    CHECK(std::abs(wootters_concurrence(rdm::build_two_spin(w)) - std::max(0.0, (3 * p - 1) / 2)) <
          1e-12);
  }
}

TEST_CASE("closed forms equal the Wootters procedure on sampled states") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int accepted = 0;
  double worst = 0.0;
  while (accepted < 1000) {
    const bool magnetized = accepted % 2 == 1;
    SpinCorrelators c = corr(u(rng), u(rng), magnetized ? u(rng) : 0.0, magnetized ? u(rng) : 0.0);
    try {
      rdm::build_two_spin(c);
    } catch (const PhysicalityError&) {
      continue;
    }
    ++accepted;
    const double w = wootters_concurrence(rdm::build_two_spin(c));
    worst = std::max(worst, std::abs(concurrence_ssb(c).c - w));
    if (!magnetized) worst = std::max(worst, std::abs(concurrence_symmetric(c).c - w));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("report bundles every form") {
  const auto r = concurrence_report(corr(-0.6, -0.3));
  CHECK(r.c_tilde == doctest::Approx(0.25));
  CHECK(r.c == r.c_tilde);
  CHECK(r.c_ssb == r.c);
  CHECK(r.wootters == doctest::Approx(0.25));
  const auto neg = concurrence_report(corr(0.1, 0.5));
  CHECK(neg.c_tilde < 0.0);
  CHECK(neg.c == 0.0);
}

TEST_CASE("magnetized radicand outside the physical region") {
  CHECK_THROWS_AS(concurrence_ssb(corr(0.0, -0.5, 0.8, 0.8)), DomainError);
}

TEST_CASE("one-site entropy") {
  CHECK(entropy_one_site(0.0).s == 1.0);
  CHECK(entropy_one_site(1.0).s == 0.0);
  CHECK(entropy_one_site(-1.0).s == 0.0);
  CHECK(entropy_one_site(0.0, LogBase::Nats).s == doctest::Approx(std::log(2.0)));
  // x = 0.75: -(3/4) log2(3/4) - (1/4) log2(1/4)
  CHECK(entropy_one_site(0.5).s == doctest::Approx(2.0 - 0.75 * std::log2(3.0)));
  CHECK_THROWS_AS(entropy_one_site(1.5), DomainError);
}
