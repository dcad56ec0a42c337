#include "xxz/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "xxz/errors.hpp"
#include "xxz/oracle.hpp"

namespace xxz::correlations {
namespace {

void check_range(double d) {
  if (d < bethe::kMinDelta || d > 1.0) {
    std::ostringstream os;
    os << "delta = " << d << " outside the supported range [-3, 1]";
    throw DomainError(os.str());
  }
}

void reject_transition_point(double d) {
  if (d == -1.0) {
    throw DomainError("delta = -1 is double-valued; request a one-sided value");
  }
}

double zz_finite_difference(double d) {
  if (!(d > -1.0 && d < 1.0)) {
    throw DomainError("finite differences need -1 < delta < 1");
  }
  const double h = std::min(kFiniteDiffStep, 0.25 * (1.0 - std::abs(d)));
  const auto e0 = [](double x) { return bethe::ground_energy(Anisotropy(x)).e0; };
  const auto central = [&](double step) { return (e0(d + step) - e0(d - step)) / (2.0 * step); };
  const double coarse = central(h);
  const double fine = central(0.5 * h);
  return 4.0 * (4.0 * fine - coarse) / 3.0;
}

double zz_analytic(double d) { return 4.0 * bethe::ground_energy_slope(Anisotropy(d)).slope; }

double side_point(double d, Side side) {
  return side == Side::Left ? d - kOneSidedOffset : d + kOneSidedOffset;
}

}  // namespace

double zz_nn(Anisotropy delta, DerivativeMethod method) {
  const double d = delta.value();
  check_range(d);
  reject_transition_point(d);
  if (d < -1.0) return 1.0;

  switch (method) {
    case DerivativeMethod::Analytic:
      return zz_analytic(d);
    case DerivativeMethod::FiniteDifference:
      return zz_finite_difference(d);
    case DerivativeMethod::CrossChecked: {
      const double analytic = zz_analytic(d);
      const double numeric = zz_finite_difference(d);
      if (std::abs(analytic - numeric) > kMethodAgreement) {
        std::ostringstream os;
        os.precision(12);
        os << "zz derivative routes disagree at delta = " << d << ": analytic " << analytic
           << ", finite difference " << numeric;
        throw DerivativeError(os.str());
      }
      return analytic;
    }
  }
  return zz_analytic(d);
}

double xx_nn(Anisotropy delta) {
  const double d = delta.value();
  check_range(d);
  if (d <= -1.0) return 0.0;
  const bethe::EnergyDensity e = bethe::ground_energy(delta);
  // At delta = 1 both terms are evaluated at the limiting nu.
  const double d_eff = std::cos(std::numbers::pi * e.nu);
  const double zz = 4.0 * bethe::ground_energy_slope_at_nu(e.nu).slope;
  return 0.5 * (4.0 * e.e0 - d_eff * zz);
}

double zz_nn_one_sided(Anisotropy delta, Side side) {
  return zz_nn(Anisotropy(side_point(delta.value(), side)));
}

double xx_nn_one_sided(Anisotropy delta, Side side) {
  return xx_nn(Anisotropy(side_point(delta.value(), side)));
}

std::vector<SpinCorrelators> extrapolated_correlators(Anisotropy delta,
                                                      std::span<const int> separations) {
  const double d = delta.value();
  std::vector<std::vector<std::pair<int, double>>> xx(separations.size());
  std::vector<std::vector<std::pair<int, double>>> zz(separations.size());
  for (int n : kExtrapolationSizes) {
    // For -1 < delta and even n the ground state lies in the 2Sz = 0 sector.
    const oracle::GroundStateSolution sol =
        oracle::diagonalize({n, d, oracle::Boundary::Periodic, 0});
    for (std::size_t k = 0; k < separations.size(); ++k) {
      const SpinCorrelators c = oracle::measure(sol, separations[k], true);
      xx[k].emplace_back(n, c.txx);
      zz[k].emplace_back(n, c.tzz);
    }
  }
  std::vector<SpinCorrelators> out;
  for (std::size_t k = 0; k < separations.size(); ++k) {
    SpinCorrelators c;
    c.r = separations[k];
    c.txx = oracle::extrapolate(xx[k]);
    c.tyy = c.txx;
    c.tzz = oracle::extrapolate(zz[k]);
    c.approximate = true;
    out.push_back(c);
  }
  return out;
}

SpinCorrelators correlators_at(Anisotropy delta, int r, bool ssb, BrokenBranch branch) {
  const double d = delta.value();
  if (r < 1 || r > kMaxSeparation) {
    std::ostringstream os;
    os << "separation r = " << r << " is not supported (1 <= r <= " << kMaxSeparation << ")";
    throw UnsupportedSeparation(os.str());
  }
  check_range(d);
  reject_transition_point(d);

  if (d < -1.0) {
    SpinCorrelators c;
    c.r = r;
    c.tzz = 1.0;
    const double m = ssb ? (branch == BrokenBranch::Up ? 1.0 : -1.0) : 0.0;
    c.pz = c.qz = c.m = m;
    return c;
  }
  if (r == 1) {
    SpinCorrelators c;
    c.r = 1;
    c.tzz = zz_nn(delta);
    c.txx = c.tyy = xx_nn(delta);
    return c;
  }
  const int separations[] = {r};
  return extrapolated_correlators(delta, separations).front();
}

}  // namespace xxz::correlations
