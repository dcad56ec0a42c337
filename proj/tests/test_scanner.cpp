#include <cmath>
#include <functional>
#include <numbers>

#include <doctest.h>

#include "xxz/errors.hpp"
#include "xxz/scanner.hpp"

using namespace xxz;
using namespace xxz::scanner;

namespace {

SweepResult synthetic(double lo, double hi, int n,
                      const std::map<std::string, std::function<double(double)>>& fns) {
  SweepResult s;
  s.lo = lo;
  s.hi = hi;
  s.n_points = n;
  s.separations = {1};
  for (int k = 0; k < n; ++k) s.grid.push_back(lo + (hi - lo) * k / (n - 1));
  for (const auto& [name, f] : fns) {
    auto& series = s.signals[name];
    for (double x : s.grid) series.push_back(f(x));
  }
  return s;
}

}  // namespace

TEST_CASE("smooth signals produce no reports") {
  std::map<std::string, std::function<double(double)>> fns;
  for (int k = 0; k < 20; ++k) {
    const double a = 0.3 + 0.2 * k;
    fns["s" + std::to_string(k)] = [a, k](double x) {
      switch (k % 5) {
        case 0: return std::sin(a * x) + 0.1 * x;
        case 1: return std::exp(-a * x * x);
        case 2: return x * x * x - a * x;
        case 3: return std::tanh(a * (x + 0.5));
        default: return std::log(4.0 + a * x);
      }
    };
  }
  const auto s = synthetic(-2.0, 0.9, 400, fns);
  for (const auto& [name, series] : s.signals) {
    CAPTURE(name);
    CHECK(scan(s, name).empty());
  }
}

TEST_CASE("step is a jump, corner is a kink") {
  const auto s = synthetic(-2.0, 1.0, 301, {
      {"step", [](double x) { return x < -0.503 ? 1.0 + 0.1 * x : 0.1 * x; }},
      {"corner", [](double x) { return std::abs(x + 0.503) + 0.2 * x * x; }},
  });
  const auto jumps = detect(s, "step");
  REQUIRE(jumps.size() == 1);
  CHECK(jumps[0].kind == Kind::Jump);
  CHECK(std::abs(jumps[0].location + 0.503) < 0.02);
  CHECK(jumps[0].left_value - jumps[0].right_value == doctest::Approx(1.0).epsilon(0.02));

  const auto kinks = scan(s, "corner");
  REQUIRE(kinks.size() == 1);
  CHECK(kinks[0].kind == Kind::Kink);
  CHECK(kinks[0].origin == Origin::MatrixElements);
  CHECK(kinks[0].implied_order == ImpliedOrder::SecondOrder);
  CHECK(std::abs(kinks[0].location + 0.503) < 0.02);
  CHECK(kinks[0].left_slope == doctest::Approx(-1.0 - 2 * 0.2 * 0.503).epsilon(0.05));
  CHECK(kinks[0].right_slope == doctest::Approx(1.0 - 2 * 0.2 * 0.503).epsilon(0.05));
}

TEST_CASE("clipping decides the origin of a concurrence kink") {
  const auto tilde = [](double x) { return 0.5 * x - 0.1 + 0.05 * x * x; };
  const auto s = synthetic(-1.0, 1.0, 201, {
      {"c_tilde", tilde},
      {"c", [&](double x) { return std::max(0.0, tilde(x)); }},
      // Coincides with its companion: any kink comes from the entries.
      {"c_tilde_ssb", [](double x) { return std::abs(x - 0.3011); }},
      {"c_ssb", [](double x) { return std::abs(x - 0.3011); }},
  });
  const auto clipped = scan(s, "c");
  REQUIRE(clipped.size() == 1);
  CHECK(clipped[0].origin == Origin::MaxOperation);
  const auto natural = scan(s, "c_ssb");
  REQUIRE(natural.size() == 1);
  CHECK(natural[0].origin == Origin::MatrixElements);
  CHECK(scan(s, "c_tilde").empty());
}

TEST_CASE("missing series") {
  const auto s = synthetic(-1.0, 1.0, 50, {{"c", [](double x) { return std::abs(x - 0.01); }}});
  CHECK_THROWS_AS(detect(s, "nope"), MissingSeries);
  CHECK_THROWS_AS(scan(s, "c"), MissingSeries);
}

TEST_CASE("explicit thresholds") {
  const auto s = synthetic(-1.0, 1.0, 201, {{"step", [](double x) { return x < 0.0051 ? 0.0 : 0.01; }}});
  CHECK(detect(s, "step").size() == 1);
  DetectorOptions high;
  high.jump_threshold = 0.1;
  high.slope_threshold = 1e3;
  CHECK(detect(s, "step").front().jump_threshold < 0.01);
  CHECK(detect(s, "step", high).empty());
}

TEST_CASE("companion names") {
  CHECK(unclipped_companion("c") == "c_tilde");
  CHECK(unclipped_companion("c_ssb") == "c_tilde_ssb");
  CHECK(unclipped_companion("c_2") == "c_tilde_2");
  CHECK(unclipped_companion("c_ssb_3") == "c_tilde_ssb_3");
  CHECK_FALSE(unclipped_companion("entropy_ssb").has_value());
  CHECK_FALSE(unclipped_companion("c_tilde").has_value());
}

TEST_CASE("sweep layout") {
  const auto s = sweep(-2.0, 0.0, 401, 1, true, {1});
  // -1 falls on this grid and is removed.
  CHECK(s.grid.size() == 400);
  for (double x : s.grid) CHECK(x != kTransition);
  REQUIRE(s.excluded.has_value());
  CHECK(s.excluded->left.at("entropy_ssb") == 0.0);
  CHECK(s.excluded->right.at("entropy_ssb") == 1.0);
  for (const auto& [name, series] : s.signals) CHECK(series.size() == s.grid.size());
  CHECK(s.series("c_tilde").front() == -1.0);
  CHECK(s.series("c_tilde_ssb").front() == 0.0);
  CHECK(s.series("e0").front() == -0.5);

  const int rs[] = {1, 2};
  SweepOptions named;
  named.suffix_names = true;
  const auto two = sweep(-2.0, -1.2, 16, rs, false, named);
  CHECK(two.signals.count("c_2") == 1);
  CHECK(two.signals.count("tzz_1") == 1);

  CHECK_THROWS_AS(sweep(-2.0, 0.0, 10, 1, false), DomainError);
  CHECK_THROWS_AS(sweep(0.0, -2.0, 100, 1, false), DomainError);
  CHECK_THROWS_AS(sweep(-4.0, 0.0, 100, 1, false), DomainError);
  CHECK_THROWS_AS(sweep(-2.0, 0.5, 100, 7, false), UnsupportedSeparation);
}

TEST_CASE("transition verdicts on real sweeps, stable under refinement") {
  for (int n : {400, 800}) {
    CAPTURE(n);
    const auto sym = sweep(-2.0, 0.0, n, 1, false);
    const auto ssb = sweep(-2.0, 0.0, n, 1, true);

    const auto c = scan(sym, "c");
    REQUIRE(c.size() == 1);
    CHECK(c[0].kind == Kind::Kink);
    CHECK(c[0].origin == Origin::MaxOperation);
    CHECK(c[0].implied_order == ImpliedOrder::SecondOrder);
    CHECK(std::abs(c[0].location + 1.0) < 0.01);

    const auto c_ssb = scan(ssb, "c_ssb");
    REQUIRE(c_ssb.size() == 1);
    CHECK(c_ssb[0].kind == Kind::Kink);
    CHECK(c_ssb[0].origin == Origin::MatrixElements);

    const auto ent = scan(ssb, "entropy_ssb");
    REQUIRE(ent.size() == 1);
    CHECK(ent[0].kind == Kind::Jump);
    CHECK(ent[0].left_value == 0.0);
    CHECK(ent[0].right_value == 1.0);
    CHECK(ent[0].implied_order == ImpliedOrder::FirstOrder);

    CHECK(scan(ssb, "entropy_sym").empty());

    const auto e0 = scan(sym, "e0");
    REQUIRE(e0.size() == 1);
    CHECK(e0[0].kind == Kind::Kink);
    CHECK(e0[0].implied_order == ImpliedOrder::FirstOrder);
  }
}
