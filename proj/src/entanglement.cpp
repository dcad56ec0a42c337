#include "xxz/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "xxz/errors.hpp"

namespace xxz::entanglement {
namespace {

constexpr double kNegativeEigenvalueLimit = -1e-9;

double xlogx(double x, LogBase base) {
  if (x <= 0.0) return 0.0;
  return x * (base == LogBase::Bits ? std::log2(x) : std::log(x));
}

Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = y(3, 0) = -1.0;
  y(1, 2) = y(2, 1) = 1.0;
  return y;
}

}  // namespace

Concurrence concurrence_symmetric(const SpinCorrelators& c) {
  const double c_tilde = 0.5 * (2.0 * std::abs(c.txx) - (1.0 + c.tzz));
  return {c_tilde, std::max(0.0, c_tilde)};
}

Concurrence concurrence_ssb(const SpinCorrelators& c) {
  const double a = 1.0 + c.tzz;
  const double b = c.pz + c.qz;
  double radicand = a * a - b * b;
  if (radicand < kRadicandTolerance) {
    std::ostringstream os;
    os << "negative radicand " << radicand << " in the magnetized concurrence (tzz = " << c.tzz
       << ", pz + qz = " << b << ")";
    throw DomainError(os.str());
  }
  radicand = std::max(radicand, 0.0);
  const double c_tilde = 0.5 * (2.0 * std::abs(c.txx) - std::sqrt(radicand));
  return {c_tilde, std::max(0.0, c_tilde)};
}

double wootters_concurrence(const rdm::TwoSpinRDM& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho.entries());
  Eigen::Vector4d weights = eig.eigenvalues();
  if (weights[0] < kNegativeEigenvalueLimit) {
    std::ostringstream os;
    os << "density matrix eigenvalue " << weights[0] << " is negative";
    throw NumericalError(os.str());
  }
  weights = weights.cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd w = eig.eigenvectors() * weights.asDiagonal();
  const Eigen::Matrix4cd tau = w.adjoint() * spin_flip() * w.conjugate();
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  const Eigen::Vector4d l = svd.singularValues();  // descending
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

ConcurrenceReport concurrence_report(const SpinCorrelators& c) {
  const Concurrence sym = concurrence_symmetric(c);
  const Concurrence ssb = concurrence_ssb(c);
  ConcurrenceReport out;
  out.r = c.r;
  out.c_tilde = sym.c_tilde;
  out.c = sym.c;
  out.c_tilde_ssb = ssb.c_tilde;
  out.c_ssb = ssb.c;
  out.wootters = wootters_concurrence(rdm::build_two_spin(c));
  return out;
}

EntropyValue entropy_one_site(double m, LogBase base) {
  const double x = rdm::build_one_site(m).x();
  return {-xlogx(x, base) - xlogx(1.0 - x, base), base};
}

}  // namespace xxz::entanglement
