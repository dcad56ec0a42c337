#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xxz/oracle.hpp"

namespace xxz::cli {

enum class Subcommand { Point, Sweep, Oracle, Scan };
enum class Format { Csv, Json };

struct RunConfig {
  Subcommand subcommand = Subcommand::Point;
  std::optional<double> delta;                     // point, oracle
  std::optional<std::pair<double, double>> range;  // sweep, scan
  int n_points = 400;
  std::vector<int> separations = {1};
  bool ssb = false;
  std::optional<Format> format;  // default: csv for sweep, json otherwise
  std::optional<std::string> output;
  std::optional<double> jump_threshold;
  std::optional<double> slope_threshold;
  // oracle
  int sites = 8;
  oracle::Boundary boundary = oracle::Boundary::Periodic;
  std::optional<int> sector;
  bool symmetrize = true;
  // scan
  std::string signal = "c";
  std::optional<std::string> input;
  bool debug = false;
  int threads = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitNumerical = 2;

/// Throws DomainError naming the first missing or invalid field.
void validate(const RunConfig& config);

/// Executes the configured subcommand, writing to `output` (or `out` when
/// no path is set). Returns the process exit status: 1 for domain errors,
/// 2 for numerical failures; the message goes to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xxz::cli
