#pragma once

// Exact diagonalization of finite XXZ chains. Basis states are bit strings
// with bit i set when spin i points up (sz = +1).

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "xxz/spin_correlators.hpp"

namespace xxz::oracle {

inline constexpr int kMaxSites = 16;
/// Sectors up to this many sites are diagonalized densely; larger ones use
/// matrix-free Lanczos.
inline constexpr int kMaxDenseSites = 12;
/// States within this energy window of the minimum count as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-10;
inline constexpr double kResidualTolerance = 1e-10;

enum class Boundary { Periodic, Open };

struct FiniteChainSpec {
  int n_sites = 8;
  double delta = 0.0;
  Boundary boundary = Boundary::Periodic;
  /// Restricts the search to one magnetization sector, given as
  /// 2 Sz = n_up - n_down. Must have the parity of n_sites.
  std::optional<int> sector;
};

/// One normalized state of the ground space, stored on the full 2^n basis.
struct GroundState {
  std::vector<double> amplitudes;
  int twice_sz = 0;
};

struct GroundStateSolution {
  int n_sites = 0;
  double delta = 0.0;
  Boundary boundary = Boundary::Periodic;
  double energy = 0.0;
  double energy_per_site = 0.0;
  /// Orthonormal basis of the ground space. Dense sectors resolve every
  /// degenerate state; Lanczos sectors contribute at most one.
  std::vector<GroundState> ground_space;
  int degeneracy = 0;
  int sz_sector = 0;     // 2 Sz of ground_space.front()
  double residual = 0.0; // max ||H psi - E psi|| over the ground space

  const std::vector<double>& state() const { return ground_space.front().amplitudes; }
};

/// Lowest-energy state over all magnetization sectors (or the requested one).
/// Throws ResourceError above kMaxSites, DomainError for invalid specs and
/// ConvergenceError if Lanczos misses the residual target.
GroundStateSolution diagonalize(const FiniteChainSpec& spec);

/// Every eigenvalue of the chain, sorted ascending, from dense
/// diagonalization of each sector. Limited to kMaxDenseSites.
std::vector<double> full_spectrum(const FiniteChainSpec& spec);

/// Applies H to a full-space vector.
std::vector<double> apply_hamiltonian(int n_sites, double delta, Boundary boundary,
                                      std::span<const double> psi);

/// Correlators of the pair (i, i + r) for a normalized full-space state.
/// Periodic chains wrap; open chains require i + r < n.
SpinCorrelators site_correlators(std::span<const double> psi, int n_sites, Boundary boundary,
                                 int i, int r);

/// Site-averaged correlators at separation r.
///
/// With a two-fold ground space spanned by states of opposite
/// magnetization, `symmetrize` selects the equal superposition (zero
/// magnetization); otherwise the positively magnetized state is used. A
/// unique ground state is used as-is. Throws DegeneracyError when the
/// ground space is more than two-fold.
SpinCorrelators measure(const GroundStateSolution& sol, int r, bool symmetrize);

/// Least-squares fit of a + b/n^2 to (n, value) pairs, returning a.
/// Requires at least three distinct even n (DomainError otherwise); throws
/// FitError when the largest residual exceeds 10% of the value spread.
double extrapolate(std::span<const std::pair<int, double>> values);

}  // namespace xxz::oracle
