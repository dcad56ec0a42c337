#pragma once

#include <complex>
#include <functional>

namespace xxz::quad {

struct Options {
  double abs_tolerance = 1e-12;
  int max_intervals = 4000;
};

struct Result {
  std::complex<double> value;
  double error = 0.0;  // estimated absolute error, |K15 - G7| summed over intervals
  int intervals = 0;
  bool converged = false;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex-valued
/// function on [a, b]. The interval with the largest error estimate is
/// bisected until the summed estimate drops below abs_tolerance or the
/// interval budget is exhausted; `converged` reports which one happened.
Result gauss_kronrod(const ComplexIntegrand& f, double a, double b,
                     const Options& options = {});

}  // namespace xxz::quad
