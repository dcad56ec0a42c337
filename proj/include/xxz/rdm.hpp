#pragma once

#include <Eigen/Dense>

#include "xxz/spin_correlators.hpp"

namespace xxz::rdm {

/// Smallest eigenvalue accepted as physical; absorbs quadrature noise.
inline constexpr double kPositivityTolerance = -1e-9;

/// Two-spin reduced density matrix in the basis |uu>, |ud>, |du>, |dd>.
class TwoSpinRDM {
 public:
  explicit TwoSpinRDM(const Eigen::Matrix4cd& entries) : entries_(entries) {}

  const Eigen::Matrix4cd& entries() const { return entries_; }
  /// Eigenvalues in ascending order.
  Eigen::Vector4d eigenvalues() const;
  /// Reduced state of site 0 (the first tensor factor) or site 1.
  Eigen::Matrix2cd partial_trace(int keep_site) const;

 private:
  Eigen::Matrix4cd entries_;
};

/// Diagonal one-site density matrix diag((1+m)/2, (1-m)/2).
class OneSiteRDM {
 public:
  explicit OneSiteRDM(double m) : m_(m) {}

  double m() const { return m_; }
  /// Weight of the spin-up eigenvalue, (1+m)/2.
  double x() const { return 0.5 * (1.0 + m_); }
  Eigen::Matrix2d matrix() const;

 private:
  double m_;
};

/// rho = 1/4 [I + pz sz(x)I + qz I(x)sz + txx sx(x)sx + tyy sy(x)sy + tzz sz(x)sz].
/// Throws DomainError for correlators outside [-1, 1] and PhysicalityError
/// when an eigenvalue falls below kPositivityTolerance.
TwoSpinRDM build_two_spin(const SpinCorrelators& c);

/// Throws DomainError unless |m| <= 1.
OneSiteRDM build_one_site(double m);

}  // namespace xxz::rdm
