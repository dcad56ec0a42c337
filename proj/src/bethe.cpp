#include "xxz/bethe.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "xxz/errors.hpp"

namespace xxz {

Anisotropy::Anisotropy(double delta) : delta_(delta) {
  if (!std::isfinite(delta)) throw DomainError("delta must be a finite number");
}

}  // namespace xxz

namespace xxz::bethe {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

std::string describe(double delta) {
  std::ostringstream os;
  os.precision(17);
  os << "delta = " << delta;
  return os.str();
}

void check_nu(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) {
    std::ostringstream os;
    os << "nu = " << nu << " outside (0, 1)";
    throw DomainError(os.str());
  }
}

// Integrates f over the truncated contour, split at t = 0 where the
// integrand peaks.
quad::Result integrate_contour(const quad::ComplexIntegrand& f,
                               const QuadratureSettings& settings) {
  quad::Options opts{0.5 * settings.abs_tolerance, settings.max_intervals};
  const quad::Result left = quad::gauss_kronrod(f, -kContourCutoff, 0.0, opts);
  const quad::Result right = quad::gauss_kronrod(f, 0.0, kContourCutoff, opts);
  return {left.value + right.value, left.error + right.error,
          left.intervals + right.intervals, left.converged && right.converged};
}

void check_quadrature(double error, double imag, const char* what, double nu) {
  if (error > kMaxQuadError || std::abs(imag) > kMaxQuadError) {
    std::ostringstream os;
    os << what << " quadrature failed at nu = " << nu << ": error estimate " << error
       << ", imaginary residue " << imag;
    throw QuadratureError(os.str());
  }
}

// sinh(y)/y - 1 without cancellation for small |y|.
cplx sinhc_minus_one(cplx y) {
  if (std::abs(y) < 0.05) {
    const cplx y2 = y * y;
    return y2 / 6.0 * (1.0 + y2 / 20.0 * (1.0 + y2 / 42.0 * (1.0 + y2 / 72.0)));
  }
  return std::sinh(y) / y - 1.0;
}

// z cot(z) - 1 without cancellation for small |z|.
double zcot_minus_one(double z) {
  if (std::abs(z) < 0.05) {
    const double z2 = z * z;
    return -z2 / 3.0 - z2 * z2 / 45.0 - 2.0 * z2 * z2 * z2 / 945.0 -
           z2 * z2 * z2 * z2 / 4725.0;
  }
  return z / std::tan(z) - 1.0;
}

}  // namespace

BetheParams nu_of_delta(Anisotropy delta) {
  const double d = delta.value();
  if (!(d > -1.0 && d < 1.0)) {
    throw DomainError(describe(d) + " outside (-1, 1); nu is undefined");
  }
  return {std::acos(d) / kPi};
}

EnergyDensity ground_energy_at_nu(double nu, const QuadratureSettings& settings) {
  check_nu(nu);
  const double sin_pi_nu = std::sin(kPi * nu);
  // sin(pi nu) is folded into the integrand so it stays O(1) as nu -> 0.
  const auto integrand = [nu, sin_pi_nu](double t) {
    const cplx x(t, kContourShift);
    const cplx nx = nu * x;
    return sin_pi_nu * std::cosh(nx) / (std::sinh(nx) * std::sinh(x)) / (2.0 * kPi);
  };
  const quad::Result q = integrate_contour(integrand, settings);
  check_quadrature(q.error, q.value.imag(), "energy", nu);

  EnergyDensity out;
  out.e0 = std::cos(kPi * nu) / 4.0 + q.value.real();
  out.branch = Branch::Critical;
  out.quad_error = q.error;
  out.imag_residue = std::abs(q.value.imag());
  out.nu = nu;
  return out;
}

EnergyDensity ground_energy(Anisotropy delta, const QuadratureSettings& settings) {
  const double d = delta.value();
  if (d < kMinDelta || d > 1.0) {
    throw DomainError(describe(d) + " outside the supported range [-3, 1]");
  }
  if (d <= -1.0) {
    EnergyDensity out;
    out.e0 = d / 4.0;
    out.branch = Branch::Ferromagnetic;
    return out;
  }
  const double nu = d == 1.0 ? kHeisenbergNu : nu_of_delta(delta).nu;
  return ground_energy_at_nu(nu, settings);
}

EnergySlope ground_energy_slope_at_nu(double nu, const QuadratureSettings& settings) {
  check_nu(nu);
  // Differentiating e0 = delta/4 + sin(pi nu)/(2 pi) I(nu) with
  // dnu/ddelta = -1/(pi sin(pi nu)) gives
  //   4 de0/ddelta = 1 - (2/pi) Int [cot(pi nu) coth(nu x) - x/(pi sinh^2(nu x))] / sinh(x).
  // The bracket equals x (g + f + g f) / (pi sinh^2(nu x)) with
  // g = pi nu cot(pi nu) - 1 and f = sinh(2 nu x)/(2 nu x) - 1.
  const double g = zcot_minus_one(kPi * nu);
  const auto integrand = [nu, g](double t) {
    const cplx x(t, kContourShift);
    const cplx f = sinhc_minus_one(2.0 * nu * x);
    const cplx s = std::sinh(nu * x);
    // Scaled so the quadrature runs directly on de0/ddelta.
    return -x * (g + f + g * f) / (kPi * s * s * std::sinh(x)) / (2.0 * kPi);
  };
  const quad::Result q = integrate_contour(integrand, settings);
  check_quadrature(q.error, q.value.imag(), "slope", nu);
  return {0.25 + q.value.real(), q.error, std::abs(q.value.imag())};
}

EnergySlope ground_energy_slope(Anisotropy delta, const QuadratureSettings& settings) {
  const double d = delta.value();
  if (d < kMinDelta || d > 1.0) {
    throw DomainError(describe(d) + " outside the supported range [-3, 1]");
  }
  if (d == -1.0) {
    throw DomainError("the energy slope is discontinuous at delta = -1; use a one-sided value");
  }
  if (d < -1.0) return {0.25, 0.0, 0.0};
  const double nu = d == 1.0 ? kHeisenbergNu : nu_of_delta(delta).nu;
  return ground_energy_slope_at_nu(nu, settings);
}

double ferro_energy_alternate_sign(Anisotropy delta) { return -delta.value() / 4.0; }

}  // namespace xxz::bethe
