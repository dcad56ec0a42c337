#include "xxz/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "xxz/errors.hpp"

namespace xxz::oracle {
namespace {

using State = std::uint32_t;

// Sectors at or below this dimension are always solved densely.
constexpr int kSmallSectorDim = 64;
constexpr int kMaxKrylov = 160;
constexpr int kMaxRestarts = 30;
// Bond coupling of the xx + yy part on antiparallel pairs.
constexpr double kFlipAmplitude = 2.0;
// Below this the ED noise dominates any finite-size trend.
constexpr double kFitNoiseFloor = 1e-10;

struct Bond {
  int i;
  int j;
};

std::vector<Bond> bonds_of(int n, Boundary boundary) {
  std::vector<Bond> bonds;
  const int count = boundary == Boundary::Periodic ? n : n - 1;
  for (int i = 0; i < count; ++i) bonds.push_back({i, (i + 1) % n});
  return bonds;
}

void validate(const FiniteChainSpec& spec) {
  if (spec.n_sites > kMaxSites) {
    std::ostringstream os;
    os << "n_sites = " << spec.n_sites << " exceeds the limit of " << kMaxSites;
    throw ResourceError(os.str());
  }
  if (spec.n_sites < 2) throw DomainError("n_sites must be at least 2");
  if (spec.boundary == Boundary::Periodic && spec.n_sites == 2) {
    throw DomainError("n_sites = 2 with periodic boundary double-counts the bond; use Open");
  }
  if (!std::isfinite(spec.delta)) throw DomainError("delta must be finite");
  if (spec.sector) {
    const int s = *spec.sector;
    if (std::abs(s) > spec.n_sites || (s + spec.n_sites) % 2 != 0) {
      std::ostringstream os;
      os << "sector 2Sz = " << s << " is not valid for " << spec.n_sites << " sites";
      throw DomainError(os.str());
    }
  }
}

class Sector {
 public:
  Sector(int n, int twice_sz, double delta, Boundary boundary)
      : n_(n), twice_sz_(twice_sz), delta_(delta), bonds_(bonds_of(n, boundary)) {
    const int n_up = (n + twice_sz) / 2;
    for (State s = 0; s < (State{1} << n); ++s) {
      if (std::popcount(s) == n_up) basis_.push_back(s);
    }
  }

  int dim() const { return static_cast<int>(basis_.size()); }
  int twice_sz() const { return twice_sz_; }
  State state(int k) const { return basis_[k]; }

  int index_of(State s) const {
    return static_cast<int>(std::lower_bound(basis_.begin(), basis_.end(), s) - basis_.begin());
  }

  double diagonal(State s) const {
    double d = 0.0;
    for (const Bond& b : bonds_) {
      d += (((s >> b.i) ^ (s >> b.j)) & 1U) ? -delta_ : delta_;
    }
    return d;
  }

  template <typename Visit>
  void for_each_flip(State s, Visit&& visit) const {
    for (const Bond& b : bonds_) {
      if (((s >> b.i) ^ (s >> b.j)) & 1U) visit(s ^ ((State{1} << b.i) | (State{1} << b.j)));
    }
  }

  void apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
    out.resize(dim());
    for (int k = 0; k < dim(); ++k) {
      const State s = basis_[k];
      double acc = diagonal(s) * in[k];
      for_each_flip(s, [&](State t) { acc += kFlipAmplitude * in[index_of(t)]; });
      out[k] = acc;
    }
  }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim(), dim());
    for (int k = 0; k < dim(); ++k) {
      const State s = basis_[k];
      h(k, k) = diagonal(s);
      for_each_flip(s, [&](State t) { h(index_of(t), k) += kFlipAmplitude; });
    }
    return h;
  }

  std::vector<double> to_full(const Eigen::VectorXd& v) const {
    std::vector<double> full(std::size_t{1} << n_, 0.0);
    for (int k = 0; k < dim(); ++k) full[basis_[k]] = v[k];
    return full;
  }

 private:
  int n_;
  int twice_sz_;
  double delta_;
  std::vector<Bond> bonds_;
  std::vector<State> basis_;
};

struct SectorResult {
  double energy;
  std::vector<Eigen::VectorXd> vectors;  // all states within tolerance of `energy`
};

SectorResult solve_dense(const Sector& sector) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sector.dense());
  const auto& values = solver.eigenvalues();
  SectorResult result{values[0], {}};
  for (int k = 0; k < values.size() && values[k] - values[0] <= kDegeneracyTolerance; ++k) {
    result.vectors.push_back(solver.eigenvectors().col(k));
  }
  return result;
}

// One Lanczos pass with full reorthogonalization; returns the lowest Ritz pair.
std::pair<double, Eigen::VectorXd> lanczos_pass(const Sector& sector, Eigen::VectorXd start) {
  const int dim = sector.dim();
  const int max_steps = std::min(dim, kMaxKrylov);
  Eigen::MatrixXd basis(dim, max_steps);
  std::vector<double> alpha;
  std::vector<double> beta;
  basis.col(0) = start.normalized();
  Eigen::VectorXd w(dim);

  int steps = 0;
  for (int j = 0; j < max_steps; ++j) {
    sector.apply(basis.col(j), w);
    alpha.push_back(basis.col(j).dot(w));
    steps = j + 1;
    // Two rounds of classical Gram-Schmidt against the whole Krylov basis.
    for (int round = 0; round < 2; ++round) {
      const Eigen::VectorXd overlaps = basis.leftCols(steps).transpose() * w;
      w -= basis.leftCols(steps) * overlaps;
    }
    const double b = w.norm();
    if (j + 1 == max_steps || b < 1e-13) break;
    beta.push_back(b);
    basis.col(j + 1) = w / b;
  }

  Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), steps);
  Eigen::VectorXd sub(std::max(steps - 1, 0));
  for (int k = 0; k + 1 < steps; ++k) sub[k] = beta[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  Eigen::VectorXd ritz = basis.leftCols(steps) * tri.eigenvectors().col(0);
  ritz.normalize();
  return {tri.eigenvalues()[0], ritz};
}

SectorResult solve_lanczos(const Sector& sector) {
  std::mt19937_64 rng(0x5eed + static_cast<unsigned>(sector.twice_sz() + 64));
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(sector.dim());
  for (int k = 0; k < sector.dim(); ++k) v[k] = dist(rng);

  Eigen::VectorXd hv;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    auto [energy, ritz] = lanczos_pass(sector, v);
    sector.apply(ritz, hv);
    // Rayleigh quotient is more accurate than the Ritz value once converged.
    const double rq = ritz.dot(hv);
    const double residual = (hv - rq * ritz).norm();
    if (residual <= 0.1 * kResidualTolerance) return {rq, {ritz}};
    v = ritz;
  }
  std::ostringstream os;
  os << "Lanczos did not converge in sector 2Sz = " << sector.twice_sz();
  throw ConvergenceError(os.str());
}

SectorResult solve(const Sector& sector, int n_sites) {
  if (n_sites <= kMaxDenseSites || sector.dim() <= kSmallSectorDim) return solve_dense(sector);
  return solve_lanczos(sector);
}

}  // namespace

GroundStateSolution diagonalize(const FiniteChainSpec& spec) {
  validate(spec);
  std::vector<int> sectors;
  if (spec.sector) {
    sectors.push_back(*spec.sector);
  } else {
    for (int s = -spec.n_sites; s <= spec.n_sites; s += 2) sectors.push_back(s);
  }

  struct Candidate {
    double energy;
    int twice_sz;
    std::vector<double> amplitudes;
    double residual;
  };
  std::vector<Candidate> candidates;
  for (int s : sectors) {
    const Sector sector(spec.n_sites, s, spec.delta, spec.boundary);
    SectorResult result = solve(sector, spec.n_sites);
    Eigen::VectorXd hv;
    for (const Eigen::VectorXd& v : result.vectors) {
      sector.apply(v, hv);
      const double e = v.dot(hv);
      candidates.push_back({e, s, sector.to_full(v), (hv - e * v).norm()});
    }
  }

  double e_min = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) e_min = std::min(e_min, c.energy);

  GroundStateSolution sol;
  sol.n_sites = spec.n_sites;
  sol.delta = spec.delta;
  sol.boundary = spec.boundary;
  sol.energy = e_min;
  sol.energy_per_site = e_min / spec.n_sites;
  // Positive magnetization first so front() is a deterministic choice.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.twice_sz > b.twice_sz; });
  for (auto& c : candidates) {
    if (c.energy - e_min > kDegeneracyTolerance) continue;
    sol.residual = std::max(sol.residual, c.residual);
    sol.ground_space.push_back({std::move(c.amplitudes), c.twice_sz});
  }
  sol.degeneracy = static_cast<int>(sol.ground_space.size());
  sol.sz_sector = sol.ground_space.front().twice_sz;
  if (sol.residual > kResidualTolerance) {
    std::ostringstream os;
    os << "ground-state residual " << sol.residual << " exceeds " << kResidualTolerance;
    throw ConvergenceError(os.str());
  }
  return sol;
}

std::vector<double> full_spectrum(const FiniteChainSpec& spec) {
  validate(spec);
  if (spec.n_sites > kMaxDenseSites) {
    throw ResourceError("full spectrum is limited to dense-sized chains");
  }
  std::vector<double> spectrum;
  for (int s = -spec.n_sites; s <= spec.n_sites; s += 2) {
    const Sector sector(spec.n_sites, s, spec.delta, spec.boundary);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sector.dense(),
                                                          Eigen::EigenvaluesOnly);
    for (int k = 0; k < sector.dim(); ++k) spectrum.push_back(solver.eigenvalues()[k]);
  }
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

std::vector<double> apply_hamiltonian(int n_sites, double delta, Boundary boundary,
                                      std::span<const double> psi) {
  const auto bonds = bonds_of(n_sites, boundary);
  std::vector<double> out(psi.size(), 0.0);
  for (State s = 0; s < psi.size(); ++s) {
    if (psi[s] == 0.0) continue;
    for (const Bond& b : bonds) {
      const bool anti = ((s >> b.i) ^ (s >> b.j)) & 1U;
      out[s] += (anti ? -delta : delta) * psi[s];
      if (anti) out[s ^ ((State{1} << b.i) | (State{1} << b.j))] += kFlipAmplitude * psi[s];
    }
  }
  return out;
}

SpinCorrelators site_correlators(std::span<const double> psi, int n_sites, Boundary boundary,
                                 int i, int r) {
  if (r < 1 || r >= n_sites) throw DomainError("separation must satisfy 1 <= r < n_sites");
  if (boundary == Boundary::Open && i + r >= n_sites) {
    throw DomainError("pair leaves the open chain");
  }
  const int j = (i + r) % n_sites;
  const State mask = (State{1} << i) | (State{1} << j);
  SpinCorrelators c;
  c.r = r;
  for (State s = 0; s < psi.size(); ++s) {
    const double amp = psi[s];
    if (amp == 0.0) continue;
    const double w = amp * amp;
    const bool up_i = (s >> i) & 1U;
    const bool up_j = (s >> j) & 1U;
    c.tzz += up_i == up_j ? w : -w;
    c.pz += up_i ? w : -w;
    c.qz += up_j ? w : -w;
    const double cross = amp * psi[s ^ mask];
    c.txx += cross;
    // sy sy picks up i*i = -1 on parallel pairs and i*(-i) = +1 on antiparallel ones.
    c.tyy += up_i == up_j ? -cross : cross;
  }
  c.m = 0.5 * (c.pz + c.qz);
  return c;
}

SpinCorrelators measure(const GroundStateSolution& sol, int r, bool symmetrize) {
  const int n = sol.n_sites;
  if (r < 1 || r >= n) throw DomainError("separation must satisfy 1 <= r < n_sites");
  if (sol.degeneracy > 2) {
    std::ostringstream os;
    os << "ground space is " << sol.degeneracy << "-fold degenerate; no unique symmetric state";
    throw DegeneracyError(os.str());
  }

  std::vector<double> psi = sol.ground_space.front().amplitudes;
  if (sol.degeneracy == 2 && symmetrize) {
    const auto& a = sol.ground_space[0];
    const auto& b = sol.ground_space[1];
    if (a.twice_sz == -b.twice_sz && a.twice_sz != 0) {
      for (std::size_t k = 0; k < psi.size(); ++k) {
        psi[k] = (a.amplitudes[k] + b.amplitudes[k]) / std::sqrt(2.0);
      }
    }
  }

  const int pairs = sol.boundary == Boundary::Periodic ? n : n - r;
  SpinCorrelators avg;
  avg.r = r;
  for (int i = 0; i < pairs; ++i) {
    const SpinCorrelators c = site_correlators(psi, n, sol.boundary, i, r);
    avg.txx += c.txx / pairs;
    avg.tyy += c.tyy / pairs;
    avg.tzz += c.tzz / pairs;
    avg.pz += c.pz / pairs;
    avg.qz += c.qz / pairs;
  }
  double m = 0.0;
  for (State s = 0; s < psi.size(); ++s) {
    m += psi[s] * psi[s] * (2.0 * std::popcount(s) - n) / n;
  }
  avg.m = m;
  return avg;
}

double extrapolate(std::span<const std::pair<int, double>> values) {
  std::set<int> sizes;
  for (const auto& [n, v] : values) {
    if (n <= 0 || n % 2 != 0) throw DomainError("extrapolation uses even chain lengths only");
    sizes.insert(n);
  }
  if (sizes.size() < 3) throw DomainError("extrapolation needs at least three distinct sizes");

  const double count = static_cast<double>(values.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [n, v] : values) {
    const double x = 1.0 / (static_cast<double>(n) * n);
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / count;

  double residual = 0.0;
  for (const auto& [n, v] : values) {
    const double x = 1.0 / (static_cast<double>(n) * n);
    residual = std::max(residual, std::abs(v - intercept - slope * x));
  }
  if (residual > std::max(0.1 * (hi - lo), kFitNoiseFloor)) {
    std::ostringstream os;
    os << "a + b/n^2 fit residual " << residual << " exceeds 10% of the spread " << hi - lo;
    throw FitError(os.str());
  }
  return intercept;
}

}  // namespace xxz::oracle
