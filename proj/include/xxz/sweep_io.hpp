#pragma once

// CSV and JSON forms of sweeps and scanner reports. Every number is written
// with 12 significant digits, so identical inputs give byte-identical files.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "xxz/scanner.hpp"

namespace xxz::io {

/// Rounds to 12 significant digits (the precision of all written output).
double round_output(double value);

/// Formats with 12 significant digits ("%.12g").
std::string format_number(double value);

/// Column names in output order: delta, e0, six columns per separation
/// (suffixed _r), entropy_sym, entropy_ssb.
std::vector<std::string> csv_columns(const scanner::SweepResult& sweep);

/// One header row and one row per grid point.
void write_csv(const scanner::SweepResult& sweep, std::ostream& out);

/// {lo, hi, n_points, separations, ssb, grid, signals, excluded?} with
/// rounded numbers.
nlohmann::ordered_json sweep_to_json(const scanner::SweepResult& sweep);

/// Inverse of sweep_to_json. Throws DomainError on malformed input.
scanner::SweepResult sweep_from_json(const nlohmann::ordered_json& doc);

/// The sweep as it reads back from its JSON form.
scanner::SweepResult rounded(const scanner::SweepResult& sweep);

nlohmann::ordered_json report_to_json(const scanner::NonAnalyticityReport& report);

}  // namespace xxz::io
