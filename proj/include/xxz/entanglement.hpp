#pragma once

#include "xxz/rdm.hpp"
#include "xxz/spin_correlators.hpp"

namespace xxz::entanglement {

/// Negative radicands down to this value are rounding noise and clamp to 0.
inline constexpr double kRadicandTolerance = -1e-12;

/// A concurrence before and after the max{0, .} clipping.
struct Concurrence {
  double c_tilde = 0.0;
  double c = 0.0;
};

struct ConcurrenceReport {
  int r = 1;
  double c_tilde = 0.0;      // symmetric closed form, before clipping
  double c = 0.0;            // max(0, c_tilde)
  double c_tilde_ssb = 0.0;  // closed form with magnetizations, before clipping
  double c_ssb = 0.0;        // max(0, c_tilde_ssb)
  double wootters = 0.0;     // general two-qubit concurrence of the assembled RDM
};

enum class LogBase { Bits, Nats };

struct EntropyValue {
  double s = 0.0;
  LogBase base = LogBase::Bits;
};

/// c_tilde = (2|txx| - (1 + tzz))/2. Magnetizations are ignored.
Concurrence concurrence_symmetric(const SpinCorrelators& c);

/// c_tilde = (2|txx| - sqrt((1 + tzz)^2 - (pz + qz)^2))/2. Equals the
/// symmetric form when pz = qz = 0. Throws DomainError when the radicand is
/// below kRadicandTolerance.
Concurrence concurrence_ssb(const SpinCorrelators& c);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit state. The
/// l_i are obtained as singular values of W^H (sy(x)sy) W*, where
/// rho = W W^H; these equal the square roots of the eigenvalues of
/// rho (sy(x)sy) rho* (sy(x)sy) without squaring small values. Throws
/// NumericalError if rho has an eigenvalue below -1e-9.
double wootters_concurrence(const rdm::TwoSpinRDM& rho);

/// All concurrence variants for one set of correlators.
ConcurrenceReport concurrence_report(const SpinCorrelators& c);

/// Entanglement entropy of one site with magnetization m. Throws DomainError
/// unless |m| <= 1.
EntropyValue entropy_one_site(double m, LogBase base = LogBase::Bits);

}  // namespace xxz::entanglement
