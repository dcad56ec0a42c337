#pragma once

#include <span>
#include <vector>

#include "xxz/bethe.hpp"
#include "xxz/spin_correlators.hpp"

namespace xxz::correlations {

enum class DerivativeMethod {
  /// Differentiation under the integral sign.
  Analytic,
  /// Central differences with one Richardson level, h0 = kFiniteDiffStep.
  FiniteDifference,
  /// Both routes; DerivativeError when they differ by more than kMethodAgreement.
  CrossChecked,
};

enum class Side { Left, Right };

/// Sign of the magnetization selected in the broken ferro phase.
enum class BrokenBranch { Up, Down };

inline constexpr double kFiniteDiffStep = 1e-4;
inline constexpr double kMethodAgreement = 1e-6;
/// Offset used for one-sided evaluations at a discontinuity.
inline constexpr double kOneSidedOffset = 1e-6;
inline constexpr int kMaxSeparation = 3;

/// Chain lengths used for the r = 2, 3 finite-size extrapolation.
inline constexpr int kExtrapolationSizes[] = {8, 10, 12, 14};

/// Nearest-neighbor <sz sz> = 4 de0/ddelta. Returns +1 in the ferro phase.
/// delta = -1 is double-valued and rejected; use zz_nn_one_sided.
double zz_nn(Anisotropy delta, DerivativeMethod method = DerivativeMethod::Analytic);

/// Nearest-neighbor <sx sx> = <sy sy> = (4 e0 - delta <sz sz>)/2; 0 for
/// delta <= -1.
double xx_nn(Anisotropy delta);

/// One-sided value of zz_nn at delta -/+ kOneSidedOffset.
double zz_nn_one_sided(Anisotropy delta, Side side);
double xx_nn_one_sided(Anisotropy delta, Side side);

/// Correlators at separation r in {1, 2, 3}.
///
/// Ferro phase (delta < -1): txx = 0, tzz = 1 at every r, with m = +/-1 when
/// `ssb` is set and m = 0 otherwise. Critical phase: r = 1 from the energy
/// density; r = 2, 3 by extrapolating exact diagonalization over
/// kExtrapolationSizes (flagged `approximate`). delta = -1 is rejected.
SpinCorrelators correlators_at(Anisotropy delta, int r, bool ssb,
                               BrokenBranch branch = BrokenBranch::Up);

/// Critical-phase r >= 2 correlators for several separations at once, so a
/// caller needing r = 2 and 3 pays for one set of diagonalizations.
std::vector<SpinCorrelators> extrapolated_correlators(Anisotropy delta,
                                                      std::span<const int> separations);

}  // namespace xxz::correlations
