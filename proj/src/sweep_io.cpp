#include "xxz/sweep_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "xxz/errors.hpp"

namespace xxz::io {
namespace {

using nlohmann::ordered_json;

std::string suffixed(const std::string& base, int r) { return base + "_" + std::to_string(r); }

// A single-separation sweep stores plain names; output always uses suffixes.
const std::vector<double>& lookup(const scanner::SweepResult& sweep, const std::string& base,
                                  int r) {
  const auto it = sweep.signals.find(suffixed(base, r));
  if (it != sweep.signals.end()) return it->second;
  return sweep.series(base);
}

ordered_json rounded_map(const std::map<std::string, double>& values) {
  ordered_json out = ordered_json::object();
  for (const auto& [name, v] : values) out[name] = round_output(v);
  return out;
}

template <typename T>
T required(const ordered_json& doc, const char* key) {
  if (!doc.contains(key)) throw DomainError(std::string("sweep JSON lacks '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("sweep JSON field '") + key + "': " + e.what());
  }
}

}  // namespace

double round_output(double value) {
  if (!std::isfinite(value)) return value;
  if (value == 0.0) return 0.0;
  return std::strtod(format_number(value).c_str(), nullptr);
}

std::string format_number(double value) {
  char buffer[32];
  if (value == 0.0) value = 0.0;  // no "-0"
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::vector<std::string> csv_columns(const scanner::SweepResult& sweep) {
  std::vector<std::string> columns = {"delta", "e0"};
  for (int r : sweep.separations) {
    for (const auto& base : scanner::kSeparationSignals) columns.push_back(suffixed(base, r));
  }
  columns.push_back("entropy_sym");
  columns.push_back("entropy_ssb");
  return columns;
}

void write_csv(const scanner::SweepResult& sweep, std::ostream& out) {
  const std::vector<std::string> columns = csv_columns(sweep);
  std::vector<const std::vector<double>*> data = {&sweep.grid, &sweep.series("e0")};
  for (int r : sweep.separations) {
    for (const auto& base : scanner::kSeparationSignals) data.push_back(&lookup(sweep, base, r));
  }
  data.push_back(&sweep.series("entropy_sym"));
  data.push_back(&sweep.series("entropy_ssb"));

  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (std::size_t k = 0; k < sweep.grid.size(); ++k) {
    for (std::size_t c = 0; c < data.size(); ++c) {
      out << (c ? "," : "") << format_number((*data[c])[k]);
    }
    out << '\n';
  }
}

ordered_json sweep_to_json(const scanner::SweepResult& sweep) {
  ordered_json doc;
  doc["lo"] = round_output(sweep.lo);
  doc["hi"] = round_output(sweep.hi);
  doc["n_points"] = sweep.n_points;
  doc["separations"] = sweep.separations;
  doc["ssb"] = sweep.ssb;
  ordered_json grid = ordered_json::array();
  for (double x : sweep.grid) grid.push_back(round_output(x));
  doc["grid"] = std::move(grid);
  ordered_json signals = ordered_json::object();
  for (const auto& [name, series] : sweep.signals) {
    ordered_json values = ordered_json::array();
    for (double v : series) values.push_back(round_output(v));
    signals[name] = std::move(values);
  }
  doc["signals"] = std::move(signals);
  if (sweep.excluded) {
    doc["excluded"] = {{"location", round_output(sweep.excluded->location)},
                       {"offset", round_output(sweep.excluded->offset)},
                       {"left", rounded_map(sweep.excluded->left)},
                       {"right", rounded_map(sweep.excluded->right)}};
  }
  return doc;
}

scanner::SweepResult sweep_from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw DomainError("sweep JSON must be an object");
  scanner::SweepResult sweep;
  sweep.lo = required<double>(doc, "lo");
  sweep.hi = required<double>(doc, "hi");
  sweep.n_points = required<int>(doc, "n_points");
  sweep.separations = required<std::vector<int>>(doc, "separations");
  sweep.ssb = required<bool>(doc, "ssb");
  sweep.grid = required<std::vector<double>>(doc, "grid");
  sweep.signals = required<std::map<std::string, std::vector<double>>>(doc, "signals");
  for (std::size_t k = 1; k < sweep.grid.size(); ++k) {
    if (!(sweep.grid[k] > sweep.grid[k - 1])) {
      throw DomainError("sweep JSON grid is not strictly increasing");
    }
  }
  for (const auto& [name, series] : sweep.signals) {
    if (series.size() != sweep.grid.size()) {
      throw DomainError("sweep JSON series '" + name + "' does not match the grid length");
    }
  }
  if (doc.contains("excluded")) {
    const ordered_json& ex = doc.at("excluded");
    scanner::ExcludedPoint point;
    point.location = required<double>(ex, "location");
    point.offset = required<double>(ex, "offset");
    point.left = required<std::map<std::string, double>>(ex, "left");
    point.right = required<std::map<std::string, double>>(ex, "right");
    sweep.excluded = std::move(point);
  }
  return sweep;
}

scanner::SweepResult rounded(const scanner::SweepResult& sweep) {
  return sweep_from_json(sweep_to_json(sweep));
}

ordered_json report_to_json(const scanner::NonAnalyticityReport& report) {
  ordered_json out;
  out["signal"] = report.signal;
  out["location"] = round_output(report.location);
  out["kind"] = scanner::to_string(report.kind);
  out["origin"] = scanner::to_string(report.origin);
  out["implied_order"] = scanner::to_string(report.implied_order);
  out["left_value"] = round_output(report.left_value);
  out["right_value"] = round_output(report.right_value);
  out["left_slope"] = round_output(report.left_slope);
  out["right_slope"] = round_output(report.right_slope);
  out["jump_threshold"] = round_output(report.jump_threshold);
  out["slope_threshold"] = round_output(report.slope_threshold);
  if (!report.note.empty()) out["note"] = report.note;
  return out;
}

}  // namespace xxz::io
