#pragma once

namespace xxz {

/// Magnetizations and two-point functions of a spin pair (i, i + r), in
/// Pauli units: txx = <sx_i sx_{i+r}>, pz = <sz_i>, qz = <sz_{i+r}>.
/// m is the uniform magnetization; for translation-invariant states
/// pz = qz = m.
struct SpinCorrelators {
  int r = 1;
  double txx = 0.0;
  double tyy = 0.0;
  double tzz = 0.0;
  double pz = 0.0;
  double qz = 0.0;
  double m = 0.0;
  /// True when the values come from finite-size extrapolation rather than
  /// a closed form.
  bool approximate = false;
};

}  // namespace xxz
