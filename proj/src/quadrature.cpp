#include "xxz/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace xxz::quad {
namespace {

// Kronrod abscissae on [0, 1); odd indices are shared with the 7-point Gauss rule.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a;
  double b;
  std::complex<double> value;
  double error;
  bool operator<(const Interval& other) const { return error < other.error; }
};

Interval apply_rule(const ComplexIntegrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::complex<double> kronrod = kKronrodWeights[7] * f(center);
  std::complex<double> gauss = kGaussWeights[3] * f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const std::complex<double> pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

Result gauss_kronrod(const ComplexIntegrand& f, double a, double b,
                     const Options& options) {
  std::priority_queue<Interval> heap;
  heap.push(apply_rule(f, a, b));
  std::complex<double> total = heap.top().value;
  double error = heap.top().error;
  int intervals = 1;

  while (error > options.abs_tolerance && intervals < options.max_intervals) {
    const Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Interval left = apply_rule(f, worst.a, mid);
    const Interval right = apply_rule(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }

  // Re-sum to drop the drift accumulated by the incremental updates.
  total = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {total, error, intervals, error <= options.abs_tolerance};
}

}  // namespace xxz::quad
