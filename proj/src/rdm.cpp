#include "xxz/rdm.hpp"

#include <cmath>
#include <sstream>

#include "xxz/errors.hpp"

namespace xxz::rdm {
namespace {

// Slack for correlators that arrive from quadrature or extrapolation.
constexpr double kBoundSlack = 1e-9;

void check_bound(double v, const char* name) {
  if (!(std::abs(v) <= 1.0 + kBoundSlack)) {
    std::ostringstream os;
    os << name << " = " << v << " outside [-1, 1]";
    throw DomainError(os.str());
  }
}

}  // namespace

Eigen::Vector4d TwoSpinRDM::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Eigen::Matrix2cd TwoSpinRDM::partial_trace(int keep_site) const {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int k = 0; k < 2; ++k) {
        out(a, b) += keep_site == 0 ? entries_(2 * a + k, 2 * b + k)
                                    : entries_(2 * k + a, 2 * k + b);
      }
    }
  }
  return out;
}

Eigen::Matrix2d OneSiteRDM::matrix() const {
  Eigen::Matrix2d out = Eigen::Matrix2d::Zero();
  out(0, 0) = 0.5 * (1.0 + m_);
  out(1, 1) = 0.5 * (1.0 - m_);
  return out;
}

TwoSpinRDM build_two_spin(const SpinCorrelators& c) {
  check_bound(c.txx, "txx");
  check_bound(c.tyy, "tyy");
  check_bound(c.tzz, "tzz");
  check_bound(c.pz, "pz");
  check_bound(c.qz, "qz");

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = (1.0 + c.tzz + c.pz + c.qz) / 4.0;
  rho(1, 1) = (1.0 - c.tzz + c.pz - c.qz) / 4.0;
  rho(2, 2) = (1.0 - c.tzz - c.pz + c.qz) / 4.0;
  rho(3, 3) = (1.0 + c.tzz - c.pz - c.qz) / 4.0;
  // sx sx + sy sy hops |ud> <-> |du>; sx sx - sy sy couples |uu> <-> |dd>.
  rho(1, 2) = rho(2, 1) = (c.txx + c.tyy) / 4.0;
  rho(0, 3) = rho(3, 0) = (c.txx - c.tyy) / 4.0;

  TwoSpinRDM out(rho);
  const double smallest = out.eigenvalues()[0];
  if (smallest < kPositivityTolerance) {
    std::ostringstream os;
    os << "two-spin density matrix has eigenvalue " << smallest << " (txx = " << c.txx
       << ", tzz = " << c.tzz << ", pz = " << c.pz << ", qz = " << c.qz << ")";
    throw PhysicalityError(os.str());
  }
  return out;
}

OneSiteRDM build_one_site(double m) {
  if (!(std::abs(m) <= 1.0)) {
    std::ostringstream os;
    os << "magnetization m = " << m << " outside [-1, 1]";
    throw DomainError(os.str());
  }
  return OneSiteRDM(m);
}

}  // namespace xxz::rdm
