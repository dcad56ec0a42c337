#pragma once

// Sweeps over the anisotropy and detection of non-analytic points in the
// resulting signals.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xxz::scanner {

/// The transition point. It is never placed on a sweep grid; signals are
/// sampled at kTransition -/+ kOneSidedOffset instead.
inline constexpr double kTransition = -1.0;
inline constexpr int kMinPoints = 16;

/// Names of the per-separation signals, in output column order.
inline const std::vector<std::string> kSeparationSignals = {
    "tzz", "txx", "c_tilde", "c", "c_tilde_ssb", "c_ssb"};

/// Both one-sided samples of every signal at an excluded grid location.
struct ExcludedPoint {
  double location = kTransition;
  double offset = 0.0;
  std::map<std::string, double> left;
  std::map<std::string, double> right;
};

struct SweepResult {
  double lo = 0.0;
  double hi = 0.0;
  int n_points = 0;
  std::vector<int> separations;
  bool ssb = false;
  /// Strictly increasing; kTransition is removed if it falls on the grid.
  std::vector<double> grid;
  /// Every series is aligned with `grid`.
  std::map<std::string, std::vector<double>> signals;
  std::optional<ExcludedPoint> excluded;

  const std::vector<double>& series(const std::string& name) const;
};

struct SweepOptions {
  /// Worker threads; 0 means hardware concurrency capped by XXZ_THREADS.
  int threads = 0;
  /// Append "_r" to the per-separation signal names. Single-separation
  /// sweeps default to plain names (c, c_tilde, ...).
  std::optional<bool> suffix_names;
};

/// Evaluates e0, the correlators, both concurrence forms (before and after
/// clipping) and both one-site entropies on linspace(lo, hi, n_points).
///
/// Symmetric signals use zero-magnetization correlators. The *_ssb signals
/// and entropy_ssb use m = 1 in the ferro phase when `ssb` is set (with
/// `ssb` unset they coincide with the symmetric ones). Requires
/// -3 <= lo < hi < 1 and n_points >= kMinPoints. A failing point aborts the
/// sweep with the offending delta in the message.
SweepResult sweep(double lo, double hi, int n_points, std::span<const int> separations,
                  bool ssb, const SweepOptions& options = {});

SweepResult sweep(double lo, double hi, int n_points, int r, bool ssb,
                  const SweepOptions& options = {});

/// Worker count after applying XXZ_THREADS.
int default_thread_count();

enum class Kind { None, Jump, Kink };
enum class Origin { NotApplicable, MaxOperation, MatrixElements };
enum class ImpliedOrder { None, FirstOrder, SecondOrder };

const char* to_string(Kind kind);
const char* to_string(Origin origin);
const char* to_string(ImpliedOrder order);

struct NonAnalyticityReport {
  double location = 0.0;
  Kind kind = Kind::None;
  std::string signal;
  double left_value = 0.0;
  double right_value = 0.0;
  double left_slope = 0.0;
  double right_slope = 0.0;
  Origin origin = Origin::NotApplicable;
  ImpliedOrder implied_order = ImpliedOrder::None;
  /// Thresholds in effect. They are a detection policy, not a physical
  /// criterion.
  double jump_threshold = 0.0;
  double slope_threshold = 0.0;
  std::string note;
};

struct DetectorOptions {
  /// Absolute thresholds. Unset: `multiplier` times the median absolute
  /// forward difference (jumps) or second difference (kinks) of the series,
  /// taken over non-flat, non-outlier entries.
  std::optional<double> jump_threshold;
  std::optional<double> slope_threshold;
  double multiplier = 10.0;
  /// A candidate must also exceed its neighborhood by this factor.
  double outlier_ratio = 4.0;
  /// Neighborhood half-width (grid points) for the local kink scale; also
  /// the largest gap bridged when grouping flagged points into one event.
  int window = 6;
};

/// Jumps (isolated forward differences above the jump threshold) and kinks
/// (isolated second differences above the slope threshold with continuous
/// values). Grouped flags produce one report each; origin is left at
/// NotApplicable. Throws MissingSeries for an unknown signal.
std::vector<NonAnalyticityReport> detect(const SweepResult& sweep, const std::string& signal,
                                         const DetectorOptions& options = {});

/// Fills `origin`. A clipped concurrence (c, c_ssb) gets MaxOperation when
/// the clipping is active next to the location, and MatrixElements when
/// the clipped and unclipped series coincide there. Other signals contain
/// no clipping and get MatrixElements. kind == None gives NotApplicable.
/// Throws MissingSeries when a clipped signal lacks its unclipped companion.
NonAnalyticityReport classify_origin(const SweepResult& sweep, NonAnalyticityReport report);

/// detect() followed by classify_origin() on every report.
std::vector<NonAnalyticityReport> scan(const SweepResult& sweep, const std::string& signal,
                                       const DetectorOptions& options = {});

/// Name of the unclipped companion of a clipped concurrence signal
/// ("c_2" -> "c_tilde_2"), or nullopt for signals without clipping.
std::optional<std::string> unclipped_companion(const std::string& signal);

}  // namespace xxz::scanner
