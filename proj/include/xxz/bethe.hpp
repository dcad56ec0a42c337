#pragma once

// Thermodynamic-limit ground-state energy of the spin-1/2 XXZ chain
//   H = sum_i (sx_i sx_{i+1} + sy_i sy_{i+1} + delta sz_i sz_{i+1})
// written with Pauli matrices. Energies are reported as e0 = (E/N)/4, the
// normalization in which <sz_i sz_{i+1}> = 4 de0/ddelta.

#include "xxz/quadrature.hpp"

namespace xxz {

/// Anisotropy delta of the zz coupling. Finite by construction; operations
/// check their own sub-ranges.
class Anisotropy {
 public:
  explicit Anisotropy(double delta);
  double value() const { return delta_; }

 private:
  double delta_;
};

}  // namespace xxz

namespace xxz::bethe {

/// Lowest supported anisotropy.
inline constexpr double kMinDelta = -3.0;
/// delta = 1 is evaluated as the nu -> 0 limit at this nu. The bias is O(nu^2)
/// in e0, far below double precision for the energy itself.
inline constexpr double kHeisenbergNu = 1e-6;
/// Symmetric truncation |t| <= T of the contour parameter. The integrand
/// decays like e^{-|t|}; the discarded tail is below 1e-17.
inline constexpr double kContourCutoff = 40.0;
/// Imaginary shift of the integration contour x = t + i/2.
inline constexpr double kContourShift = 0.5;
/// Limit on the estimated absolute error of any returned energy or slope.
inline constexpr double kMaxQuadError = 1e-10;

/// delta = cos(pi nu), nu in (0, 1).
struct BetheParams {
  double nu;
};

enum class Branch { Ferromagnetic, Critical };

struct EnergyDensity {
  double e0 = 0.0;
  Branch branch = Branch::Critical;
  double quad_error = 0.0;    // estimated absolute error on e0; 0 for ferro
  double imag_residue = 0.0;  // |Im| of the contour contribution to e0
  double nu = 0.0;            // 0 for ferro
};

/// de0/ddelta with its quadrature error estimate.
struct EnergySlope {
  double slope = 0.0;
  double quad_error = 0.0;
  double imag_residue = 0.0;
};

struct QuadratureSettings {
  double abs_tolerance = 1e-12;
  int max_intervals = 4000;
};

/// Principal-branch inversion nu = arccos(delta)/pi. Throws DomainError
/// unless -1 < delta < 1.
BetheParams nu_of_delta(Anisotropy delta);

/// Ground-state energy density for delta in [-3, 1].
///
/// delta <= -1 returns the aligned product-state value delta/4. For
/// -1 < delta < 1 the energy is delta/4 plus sin(pi nu)/(2 pi) times the
/// contour integral of coth(nu x)/sinh(x) along Im x = 1/2. delta = 1 is
/// evaluated at nu = kHeisenbergNu.
///
/// Throws DomainError outside [-3, 1] and QuadratureError when the error
/// estimate or the imaginary residue exceeds kMaxQuadError.
EnergyDensity ground_energy(Anisotropy delta, const QuadratureSettings& settings = {});

/// Critical-branch energy evaluated directly from nu in (0, 1).
EnergyDensity ground_energy_at_nu(double nu, const QuadratureSettings& settings = {});

/// Exact derivative de0/ddelta obtained by differentiating under the integral
/// sign. The integrand is rearranged so that the 1/nu^2 terms cancel
/// analytically, which keeps it accurate down to nu = kHeisenbergNu.
/// Ferro branch (delta < -1) returns exactly 1/4. delta = -1 is rejected
/// (the slope is discontinuous there) and delta = 1 is evaluated as a limit.
EnergySlope ground_energy_slope(Anisotropy delta, const QuadratureSettings& settings = {});

/// Critical-branch slope evaluated directly from nu in (0, 1).
EnergySlope ground_energy_slope_at_nu(double nu, const QuadratureSettings& settings = {});

/// The ferro-branch value with the opposite sign, -delta/4. Only used in
/// diagnostic output; the library value is delta/4.
double ferro_energy_alternate_sign(Anisotropy delta);

}  // namespace xxz::bethe
