#include <cmath>
#include <numeric>

#include <doctest.h>

#include "xxz/entanglement.hpp"
#include "xxz/errors.hpp"
#include "xxz/oracle.hpp"

using namespace xxz;
using namespace xxz::oracle;

namespace {

double norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

TEST_CASE("two-site singlet") {
  const auto sol = diagonalize({2, 1.0, Boundary::Open, std::nullopt});
  CHECK(std::abs(sol.energy + 3.0) < 1e-12);
  CHECK(sol.degeneracy == 1);
  const auto c = measure(sol, 1, true);
  CHECK(c.txx == doctest::Approx(-1.0));
  CHECK(c.tyy == doctest::Approx(-1.0));
  CHECK(c.tzz == doctest::Approx(-1.0));
  CHECK(entanglement::concurrence_report(c).wootters == doctest::Approx(1.0));
}

// Ground energies and next-nearest-neighbor correlators from an independent
// sparse diagonalization built from Kronecker products of Pauli matrices.
TEST_CASE("periodic chains against an independent sparse solver") {
  struct Ref {
    int n;
    double delta, energy, zz2, xx2;
  };
  const Ref refs[] = {
      {6, 0.7, -10.136349163394762, 0.18819125876657933, 0.32420331418819115},
      {10, 0.3, -14.287673288778839, 0.06685621658461562, 0.36649894672100247},
      {14, 0.3, -19.829361625375192, 0.06484721972256023, 0.360022670464918},
      {14, -0.6, -15.072919395193477, -0.09791741152965529, 0.5159039038392049},
  };
  for (const auto& ref : refs) {
    CAPTURE(ref.n);
    CAPTURE(ref.delta);
    const auto sol = diagonalize({ref.n, ref.delta, Boundary::Periodic, std::nullopt});
    CHECK(std::abs(sol.energy - ref.energy) < 1e-9);
    CHECK(sol.residual < kResidualTolerance);
    CHECK(sol.sz_sector == 0);
    const auto c = measure(sol, 2, true);
    CHECK(std::abs(c.tzz - ref.zz2) < 1e-8);
    CHECK(std::abs(c.txx - ref.xx2) < 1e-8);
    CHECK(std::abs(c.tyy - ref.xx2) < 1e-8);
  }
}

TEST_CASE("ground state is an eigenvector") {
  const auto sol = diagonalize({8, -0.4, Boundary::Open, std::nullopt});
  const auto hpsi = apply_hamiltonian(8, -0.4, Boundary::Open, sol.state());
  std::vector<double> diff(hpsi.size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = hpsi[k] - sol.energy * sol.state()[k];
  CHECK(norm(diff) < 1e-10);
  CHECK(std::abs(norm(sol.state()) - 1.0) < 1e-12);
  const auto spectrum = full_spectrum({8, -0.4, Boundary::Open, std::nullopt});
  CHECK(std::abs(spectrum.front() - sol.energy) < 1e-10);
  CHECK(spectrum.size() == 256);
}

TEST_CASE("sector restriction") {
  const auto all = diagonalize({8, 0.5, Boundary::Periodic, std::nullopt});
  const auto s0 = diagonalize({8, 0.5, Boundary::Periodic, 0});
  CHECK(std::abs(all.energy - s0.energy) < 1e-10);
  const auto s2 = diagonalize({8, 0.5, Boundary::Periodic, 2});
  CHECK(s2.energy > s0.energy);
  CHECK(s2.sz_sector == 2);
  // One fully polarized state: E = n delta.
  const auto s8 = diagonalize({8, 0.5, Boundary::Periodic, 8});
  CHECK(s8.energy == doctest::Approx(4.0));
  CHECK_THROWS_AS(diagonalize({8, 0.5, Boundary::Periodic, 3}), DomainError);
}

TEST_CASE("ferro chains are doubly degenerate product states") {
  const auto sol = diagonalize({8, -2.0, Boundary::Periodic, std::nullopt});
  CHECK(sol.degeneracy == 2);
  CHECK(sol.energy_per_site == doctest::Approx(-2.0));
  const auto sym = measure(sol, 1, true);
  const auto broken = measure(sol, 1, false);
  CHECK(sym.m == doctest::Approx(0.0));
  CHECK(std::abs(broken.m) == doctest::Approx(1.0));
  CHECK(sym.tzz == doctest::Approx(1.0));
  CHECK(entanglement::concurrence_report(sym).wootters < 1e-10);
  CHECK(entanglement::concurrence_report(broken).wootters < 1e-10);
}

TEST_CASE("Lanczos chains in the ferro phase") {
  const auto sol = diagonalize({14, -1.5, Boundary::Periodic, std::nullopt});
  CHECK(sol.degeneracy == 2);
  CHECK(sol.energy_per_site == doctest::Approx(-1.5));
}

TEST_CASE("limits and errors") {
  CHECK_THROWS_AS(diagonalize({17, 0.0, Boundary::Periodic, std::nullopt}), ResourceError);
  CHECK_THROWS_AS(diagonalize({2, 0.0, Boundary::Periodic, std::nullopt}), DomainError);
  CHECK_THROWS_AS(full_spectrum({14, 0.0, Boundary::Periodic, std::nullopt}), ResourceError);
  const auto sol = diagonalize({6, 0.0, Boundary::Open, std::nullopt});
  CHECK_THROWS_AS(measure(sol, 6, true), DomainError);
  // Four-fold degenerate ground space at the isotropic ferro point.
  const auto iso = diagonalize({4, -1.0, Boundary::Periodic, std::nullopt});
  CHECK(iso.degeneracy > 2);
  CHECK_THROWS_AS(measure(iso, 1, true), DegeneracyError);
}

TEST_CASE("extrapolation in 1/n^2") {
  std::vector<std::pair<int, double>> pts;
  for (int n : {8, 10, 12, 14}) pts.emplace_back(n, 0.3 + 2.0 / (n * n));
  CHECK(extrapolate(pts) == doctest::Approx(0.3).epsilon(1e-12));
  const std::vector<std::pair<int, double>> two = {{8, 1.0}, {10, 1.0}};
  CHECK_THROWS_AS(extrapolate(two), DomainError);
  const std::vector<std::pair<int, double>> odd = {{7, 1.0}, {8, 1.0}, {10, 1.0}};
  CHECK_THROWS_AS(extrapolate(odd), DomainError);
  const std::vector<std::pair<int, double>> bad = {{8, 0.0}, {10, 1.0}, {12, 0.0}, {14, 1.0}};
  CHECK_THROWS_AS(extrapolate(bad), FitError);
}
