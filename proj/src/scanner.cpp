#include "xxz/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include "xxz/errors.hpp"

namespace xxz::scanner {
namespace {

// Relative size below which a difference counts as exactly flat.
constexpr double kFlatRelative = 1e-12;
// Grid points on each side inspected when deciding whether clipping is active.
constexpr int kClipNeighborhood = 3;
constexpr double kClipTolerance = 1e-12;

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

struct SplitName {
  std::string base;
  std::string suffix;  // "" or "_<r>"
};

SplitName split_name(const std::string& name) {
  static const std::regex pattern(R"(^(.*?)(_[0-9]+)?$)");
  std::smatch m;
  std::regex_match(name, m, pattern);
  return {m[1].str(), m[2].str()};
}

// Everything detect() derives from one series.
class Analysis {
 public:
  Analysis(const SweepResult& sweep, const std::string& signal, const DetectorOptions& options)
      : x_(sweep.grid), y_(sweep.series(signal)), options_(options) {
    n_ = static_cast<int>(x_.size());
    double scale = 1.0;
    for (double v : y_) scale = std::max(scale, std::abs(v));
    flat_ = kFlatRelative * scale;

    std::vector<double> spacing;
    for (int k = 0; k + 1 < n_; ++k) spacing.push_back(x_[k + 1] - x_[k]);
    h_ = median(spacing);

    if (sweep.excluded) {
      const ExcludedPoint& ex = *sweep.excluded;
      for (int k = 0; k + 1 < n_; ++k) {
        if (x_[k] < ex.location && ex.location < x_[k + 1]) {
          gap_cell_ = k;
          gap_location_ = ex.location;
          const auto l = ex.left.find(signal);
          const auto r = ex.right.find(signal);
          if (l != ex.left.end() && r != ex.right.end()) {
            gap_left_ = l->second;
            gap_right_ = r->second;
          }
        }
      }
    }
    find_jumps();
    find_kinks();
  }

  std::vector<NonAnalyticityReport> reports(const std::string& signal) const;

 private:
  double cell_size(int k) const {
    if (k == gap_cell_ && gap_left_) return std::abs(*gap_right_ - *gap_left_);
    return std::abs(y_[k + 1] - y_[k]);
  }

  double cell_slope(int k) const { return (y_[k + 1] - y_[k]) / (x_[k + 1] - x_[k]); }

  void find_jumps();
  void find_kinks();
  NonAnalyticityReport make_report(const std::string& signal, const std::vector<int>& jumps,
                                   const std::vector<int>& kinks) const;

  const std::vector<double>& x_;
  const std::vector<double>& y_;
  DetectorOptions options_;
  int n_ = 0;
  double flat_ = 0.0;
  double h_ = 0.0;
  int gap_cell_ = -1;
  double gap_location_ = 0.0;
  std::optional<double> gap_left_;
  std::optional<double> gap_right_;

  std::vector<bool> jump_cell_;
  std::vector<int> jumps_;
  std::vector<double> d2_;
  std::vector<bool> d2_valid_;
  std::vector<int> kinks_;
  double jump_threshold_ = 0.0;
  double slope_threshold_ = 0.0;
};

void Analysis::find_jumps() {
  const int cells = n_ - 1;
  jump_cell_.assign(std::max(cells, 0), false);
  std::vector<double> size(cells);
  for (int k = 0; k < cells; ++k) size[k] = cell_size(k);

  std::vector<bool> outlier(cells, false);
  for (int k = 0; k < cells; ++k) {
    const double left = k > 0 ? size[k - 1] : 0.0;
    const double right = k + 1 < cells ? size[k + 1] : 0.0;
    outlier[k] = size[k] > flat_ && size[k] > options_.outlier_ratio * std::max(left, right);
  }

  if (options_.jump_threshold) {
    jump_threshold_ = *options_.jump_threshold;
  } else {
    std::vector<double> typical;
    for (int k = 0; k < cells; ++k) {
      if (!outlier[k] && size[k] > flat_) typical.push_back(size[k]);
    }
    jump_threshold_ = std::max(options_.multiplier * median(typical), flat_);
  }
  for (int k = 0; k < cells; ++k) {
    if (outlier[k] && size[k] > jump_threshold_) {
      jump_cell_[k] = true;
      jumps_.push_back(k);
    }
  }
}

void Analysis::find_kinks() {
  d2_.assign(n_, 0.0);
  d2_valid_.assign(n_, false);
  for (int k = 1; k + 1 < n_; ++k) {
    if (jump_cell_[k - 1] || jump_cell_[k]) continue;
    // Divided second difference scaled by h^2; equals y[k+1] - 2 y[k] + y[k-1]
    // on a uniform grid.
    d2_[k] = 2.0 * h_ * h_ * (cell_slope(k) - cell_slope(k - 1)) / (x_[k + 1] - x_[k - 1]);
    d2_valid_[k] = true;
  }

  if (options_.slope_threshold) {
    slope_threshold_ = *options_.slope_threshold;
  } else {
    // A corner spreads over two adjacent points, so compare against the
    // points two steps away before admitting a value to the median.
    const auto at = [&](int j) { return j >= 0 && j < n_ && d2_valid_[j] ? std::abs(d2_[j]) : 0.0; };
    std::vector<double> typical;
    for (int k = 0; k < n_; ++k) {
      const double v = std::abs(d2_[k]);
      if (!d2_valid_[k] || v <= flat_) continue;
      if (v > options_.outlier_ratio * std::max(at(k - 2), at(k + 2))) continue;
      typical.push_back(v);
    }
    slope_threshold_ = std::max(options_.multiplier * median(typical), flat_);
  }

  for (int k = 0; k < n_; ++k) {
    if (!d2_valid_[k] || std::abs(d2_[k]) <= slope_threshold_) continue;
    std::vector<double> local;
    for (int j = std::max(0, k - options_.window); j <= std::min(n_ - 1, k + options_.window);
         ++j) {
      if (std::abs(j - k) >= 2 && d2_valid_[j]) local.push_back(std::abs(d2_[j]));
    }
    if (std::abs(d2_[k]) > options_.outlier_ratio * median(local)) kinks_.push_back(k);
  }
}

std::vector<NonAnalyticityReport> Analysis::reports(const std::string& signal) const {
  // Flags on a common axis: cell k sits at k + 0.5, point k at k.
  struct Flag {
    double pos;
    bool is_jump;
    int index;
  };
  std::vector<Flag> flags;
  for (int k : jumps_) flags.push_back({k + 0.5, true, k});
  for (int k : kinks_) flags.push_back({static_cast<double>(k), false, k});
  std::sort(flags.begin(), flags.end(), [](const Flag& a, const Flag& b) { return a.pos < b.pos; });

  std::vector<NonAnalyticityReport> out;
  std::size_t start = 0;
  while (start < flags.size()) {
    std::size_t end = start + 1;
    while (end < flags.size() && flags[end].pos - flags[end - 1].pos <= options_.window) ++end;
    std::vector<int> jumps;
    std::vector<int> kinks;
    for (std::size_t i = start; i < end; ++i) {
      (flags[i].is_jump ? jumps : kinks).push_back(flags[i].index);
    }
    NonAnalyticityReport report = make_report(signal, jumps, kinks);
    if (report.kind != Kind::None) out.push_back(std::move(report));
    start = end;
  }
  return out;
}

NonAnalyticityReport Analysis::make_report(const std::string& signal,
                                           const std::vector<int>& jumps,
                                           const std::vector<int>& kinks) const {
  NonAnalyticityReport report;
  report.signal = signal;
  report.jump_threshold = jump_threshold_;
  report.slope_threshold = slope_threshold_;
  const auto slope_or_zero = [&](int cell) {
    return cell >= 0 && cell + 1 < n_ ? cell_slope(cell) : 0.0;
  };

  if (!jumps.empty()) {
    const int k = *std::max_element(jumps.begin(), jumps.end(), [&](int a, int b) {
      return cell_size(a) < cell_size(b);
    });
    const bool at_gap = k == gap_cell_;
    report.kind = Kind::Jump;
    report.location = at_gap ? gap_location_ : 0.5 * (x_[k] + x_[k + 1]);
    report.left_value = at_gap && gap_left_ ? *gap_left_ : y_[k];
    report.right_value = at_gap && gap_right_ ? *gap_right_ : y_[k + 1];
    report.left_slope = slope_or_zero(k - 1);
    report.right_slope = slope_or_zero(k + 1);
  } else {
    const int k = *std::max_element(kinks.begin(), kinks.end(), [&](int a, int b) {
      return std::abs(d2_[a]) < std::abs(d2_[b]);
    });
    const bool at_gap = gap_cell_ >= 0 && (k == gap_cell_ || k == gap_cell_ + 1);
    report.kind = Kind::Kink;
    if (at_gap) {
      const int g = gap_cell_;
      report.location = gap_location_;
      report.left_value = gap_left_ ? *gap_left_ : y_[g];
      report.right_value = gap_right_ ? *gap_right_ : y_[g + 1];
      report.left_slope = slope_or_zero(g - 1);
      report.right_slope = slope_or_zero(g + 1);
    } else {
      report.location = x_[k];
      report.left_value = report.right_value = y_[k];
      // Cells one step away from the peak are clear of a break that falls
      // between grid points.
      report.left_slope = slope_or_zero(k >= 2 ? k - 2 : k - 1);
      report.right_slope = slope_or_zero(k + 2 < n_ ? k + 1 : k);
    }
    const bool continuous = std::abs(report.right_value - report.left_value) <= jump_threshold_;
    const bool slope_break =
        std::abs(report.right_slope - report.left_slope) * h_ > slope_threshold_;
    if (!continuous || !slope_break) report.kind = Kind::None;
  }

  const bool energy = split_name(signal).base == "e0";
  if (report.kind == Kind::Jump) {
    report.implied_order = ImpliedOrder::FirstOrder;
  } else if (report.kind == Kind::Kink) {
    // A kink in the energy itself is a jump in its first derivative.
    report.implied_order = energy ? ImpliedOrder::FirstOrder : ImpliedOrder::SecondOrder;
  }
  return report;
}

bool clipping_active(const SweepResult& sweep, const std::string& post, const std::string& pre,
                     double location) {
  const auto& x = sweep.grid;
  const auto& clipped = sweep.series(post);
  const auto& raw = sweep.series(pre);
  const auto differs = [](double a, double b) { return std::abs(a - b) > kClipTolerance; };

  const int n = static_cast<int>(x.size());
  const int right = static_cast<int>(std::lower_bound(x.begin(), x.end(), location) - x.begin());
  for (int k = right - kClipNeighborhood; k < right + kClipNeighborhood; ++k) {
    if (k >= 0 && k < n && differs(clipped[k], raw[k])) return true;
  }
  if (sweep.excluded && std::abs(sweep.excluded->location - location) < 1e-12) {
    for (const auto* side : {&sweep.excluded->left, &sweep.excluded->right}) {
      const auto a = side->find(post);
      const auto b = side->find(pre);
      if (a != side->end() && b != side->end() && differs(a->second, b->second)) return true;
    }
  }
  return false;
}

}  // namespace

const char* to_string(Kind kind) {
  switch (kind) {
    case Kind::Jump: return "Jump";
    case Kind::Kink: return "Kink";
    case Kind::None: break;
  }
  return "None";
}

const char* to_string(Origin origin) {
  switch (origin) {
    case Origin::MaxOperation: return "MaxOperation";
    case Origin::MatrixElements: return "MatrixElements";
    case Origin::NotApplicable: break;
  }
  return "NotApplicable";
}

const char* to_string(ImpliedOrder order) {
  switch (order) {
    case ImpliedOrder::FirstOrder: return "FirstOrder";
    case ImpliedOrder::SecondOrder: return "SecondOrder";
    case ImpliedOrder::None: break;
  }
  return "None";
}

std::optional<std::string> unclipped_companion(const std::string& signal) {
  const SplitName name = split_name(signal);
  if (name.base == "c") return "c_tilde" + name.suffix;
  if (name.base == "c_ssb") return "c_tilde_ssb" + name.suffix;
  return std::nullopt;
}

std::vector<NonAnalyticityReport> detect(const SweepResult& sweep, const std::string& signal,
                                         const DetectorOptions& options) {
  if (sweep.grid.size() < 3) return {};
  return Analysis(sweep, signal, options).reports(signal);
}

NonAnalyticityReport classify_origin(const SweepResult& sweep, NonAnalyticityReport report) {
  if (report.kind == Kind::None) {
    report.origin = Origin::NotApplicable;
    return report;
  }
  const auto companion = unclipped_companion(report.signal);
  if (!companion) {
    report.origin = Origin::MatrixElements;
    return report;
  }
  if (!sweep.signals.contains(*companion)) {
    throw MissingSeries("classifying '" + report.signal + "' needs the unclipped series '" +
                        *companion + "'");
  }
  if (clipping_active(sweep, report.signal, *companion, report.location)) {
    report.origin = Origin::MaxOperation;
  } else {
    report.origin = Origin::MatrixElements;
    if (split_name(report.signal).base == "c_ssb") {
      report.note =
          "no clipping: the break is inherited from the correlators and magnetization; the "
          "energy's jump in <sz sz> is cancelled by the pz + qz term, so the signal still "
          "reads as a slope break";
    }
  }
  return report;
}

std::vector<NonAnalyticityReport> scan(const SweepResult& sweep, const std::string& signal,
                                       const DetectorOptions& options) {
  std::vector<NonAnalyticityReport> reports = detect(sweep, signal, options);
  for (auto& report : reports) report = classify_origin(sweep, std::move(report));
  return reports;
}

}  // namespace xxz::scanner
