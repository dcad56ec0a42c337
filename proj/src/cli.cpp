#include "xxz/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "xxz/bethe.hpp"
#include "xxz/correlations.hpp"
#include "xxz/entanglement.hpp"
#include "xxz/errors.hpp"
#include "xxz/scanner.hpp"
#include "xxz/sweep_io.hpp"

namespace xxz::cli {
namespace {

using nlohmann::ordered_json;

const char* name_of(Subcommand s) {
  switch (s) {
    case Subcommand::Point: return "point";
    case Subcommand::Sweep: return "sweep";
    case Subcommand::Oracle: return "oracle";
    case Subcommand::Scan: return "scan";
  }
  return "?";
}

Format format_of(const RunConfig& config) {
  if (config.format) return *config.format;
  return config.subcommand == Subcommand::Sweep ? Format::Csv : Format::Json;
}

double num(double v) { return io::round_output(v); }

ordered_json config_echo(const RunConfig& config) {
  ordered_json c;
  c["subcommand"] = name_of(config.subcommand);
  if (config.delta) c["delta"] = num(*config.delta);
  if (config.range) c["range"] = {num(config.range->first), num(config.range->second)};
  if (config.subcommand == Subcommand::Sweep || config.subcommand == Subcommand::Scan) {
    c["points"] = config.n_points;
    c["ssb"] = config.ssb;
  }
  if (config.subcommand == Subcommand::Point) c["ssb"] = config.ssb;
  c["r"] = config.separations;
  if (config.subcommand == Subcommand::Oracle) {
    c["sites"] = config.sites;
    c["boundary"] = config.boundary == oracle::Boundary::Periodic ? "periodic" : "open";
    if (config.sector) c["sector"] = *config.sector;
    c["state"] = config.symmetrize ? "symmetric" : "broken";
  }
  if (config.subcommand == Subcommand::Scan) {
    c["signal"] = config.signal;
    if (config.input) c["input"] = *config.input;
  }
  if (config.jump_threshold) c["jump_threshold"] = num(*config.jump_threshold);
  if (config.slope_threshold) c["slope_threshold"] = num(*config.slope_threshold);
  c["format"] = format_of(config) == Format::Csv ? "csv" : "json";
  return c;
}

ordered_json pair_json(const SpinCorrelators& c, const entanglement::ConcurrenceReport& rep) {
  ordered_json j;
  j["r"] = c.r;
  j["txx"] = num(c.txx);
  j["tyy"] = num(c.tyy);
  j["tzz"] = num(c.tzz);
  j["pz"] = num(c.pz);
  j["qz"] = num(c.qz);
  j["m"] = num(c.m);
  j["approximate"] = c.approximate;
  j["c_tilde"] = num(rep.c_tilde);
  j["c"] = num(rep.c);
  j["c_tilde_ssb"] = num(rep.c_tilde_ssb);
  j["c_ssb"] = num(rep.c_ssb);
  j["wootters"] = num(rep.wootters);
  return j;
}

scanner::DetectorOptions detector_options(const RunConfig& config) {
  scanner::DetectorOptions options;
  options.jump_threshold = config.jump_threshold;
  options.slope_threshold = config.slope_threshold;
  return options;
}

void write_reports_csv(const std::vector<scanner::NonAnalyticityReport>& reports,
                       std::ostream& out) {
  out << "signal,location,kind,origin,implied_order,left_value,right_value,left_slope,"
         "right_slope\n";
  for (const auto& r : reports) {
    out << r.signal << ',' << io::format_number(r.location) << ',' << scanner::to_string(r.kind)
        << ',' << scanner::to_string(r.origin) << ',' << scanner::to_string(r.implied_order)
        << ',' << io::format_number(r.left_value) << ',' << io::format_number(r.right_value)
        << ',' << io::format_number(r.left_slope) << ',' << io::format_number(r.right_slope)
        << '\n';
  }
}

void run_point(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Anisotropy delta(*config.delta);
  const bethe::EnergyDensity energy = bethe::ground_energy(delta);
  if (config.debug && energy.branch == bethe::Branch::Ferromagnetic) {
    err << "debug: ferro e0 = " << io::format_number(energy.e0)
        << " (opposite-sign convention: " << io::format_number(bethe::ferro_energy_alternate_sign(delta))
        << ")\n";
  }
  const double m = config.ssb && delta.value() <= -1.0 ? 1.0 : 0.0;
  std::vector<std::pair<SpinCorrelators, entanglement::ConcurrenceReport>> pairs;
  for (int r : config.separations) {
    SpinCorrelators c = correlations::correlators_at(delta, r, config.ssb);
    pairs.emplace_back(c, entanglement::concurrence_report(c));
  }
  const double s_sym = entanglement::entropy_one_site(0.0).s;
  const double s_ssb = entanglement::entropy_one_site(m).s;

  if (format_of(config) == Format::Csv) {
    out << "delta,e0,r,txx,tyy,tzz,m,c_tilde,c,c_tilde_ssb,c_ssb,wootters,entropy_sym,"
           "entropy_ssb\n";
    for (const auto& [c, rep] : pairs) {
      out << io::format_number(delta.value()) << ',' << io::format_number(energy.e0) << ','
          << c.r << ',' << io::format_number(c.txx) << ',' << io::format_number(c.tyy) << ','
          << io::format_number(c.tzz) << ',' << io::format_number(c.m) << ','
          << io::format_number(rep.c_tilde) << ',' << io::format_number(rep.c) << ','
          << io::format_number(rep.c_tilde_ssb) << ',' << io::format_number(rep.c_ssb) << ','
          << io::format_number(rep.wootters) << ',' << io::format_number(s_sym) << ','
          << io::format_number(s_ssb) << '\n';
    }
    return;
  }
  ordered_json doc;
  doc["config"] = config_echo(config);
  doc["delta"] = num(delta.value());
  doc["branch"] = energy.branch == bethe::Branch::Critical ? "critical" : "ferromagnetic";
  doc["e0"] = num(energy.e0);
  doc["quad_error"] = num(energy.quad_error);
  ordered_json list = ordered_json::array();
  for (const auto& [c, rep] : pairs) list.push_back(pair_json(c, rep));
  doc["pairs"] = std::move(list);
  doc["entropy_sym"] = num(s_sym);
  doc["entropy_ssb"] = num(s_ssb);
  out << doc.dump(2) << '\n';
}

void run_sweep(const RunConfig& config, std::ostream& out) {
  scanner::SweepOptions options;
  options.threads = config.threads;
  options.suffix_names = true;
  const scanner::SweepResult sweep =
      io::rounded(scanner::sweep(config.range->first, config.range->second, config.n_points,
                                 config.separations, config.ssb, options));
  if (format_of(config) == Format::Csv) {
    io::write_csv(sweep, out);
    return;
  }
  ordered_json doc;
  doc["config"] = config_echo(config);
  doc["series"] = io::sweep_to_json(sweep);
  ordered_json reports = ordered_json::array();
  for (const auto& [name, series] : sweep.signals) {
    for (const auto& report : scanner::scan(sweep, name, detector_options(config))) {
      reports.push_back(io::report_to_json(report));
    }
  }
  doc["reports"] = std::move(reports);
  out << doc.dump(2) << '\n';
}

scanner::SweepResult load_sweep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("input: cannot open '" + path + "'");
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("input: '" + path + "' is not valid JSON: " + e.what());
  }
  return io::sweep_from_json(doc.contains("series") ? doc.at("series") : doc);
}

void run_scan(const RunConfig& config, std::ostream& out) {
  scanner::SweepResult sweep;
  if (config.input) {
    sweep = load_sweep(*config.input);
  } else {
    scanner::SweepOptions options;
    options.threads = config.threads;
    sweep = io::rounded(scanner::sweep(config.range->first, config.range->second,
                                       config.n_points, config.separations, config.ssb,
                                       options));
  }
  const auto reports = scanner::scan(sweep, config.signal, detector_options(config));
  if (format_of(config) == Format::Csv) {
    write_reports_csv(reports, out);
    return;
  }
  ordered_json doc;
  doc["config"] = config_echo(config);
  ordered_json list = ordered_json::array();
  for (const auto& report : reports) list.push_back(io::report_to_json(report));
  doc["reports"] = std::move(list);
  out << doc.dump(2) << '\n';
}

void run_oracle(const RunConfig& config, std::ostream& out) {
  const oracle::GroundStateSolution sol =
      oracle::diagonalize({config.sites, *config.delta, config.boundary, config.sector});
  std::vector<std::pair<SpinCorrelators, entanglement::ConcurrenceReport>> pairs;
  double m = 0.0;
  for (int r : config.separations) {
    const SpinCorrelators c = oracle::measure(sol, r, config.symmetrize);
    m = c.m;
    pairs.emplace_back(c, entanglement::concurrence_report(c));
  }
  const double entropy = entanglement::entropy_one_site(std::clamp(m, -1.0, 1.0)).s;

  if (format_of(config) == Format::Csv) {
    out << "sites,delta,energy,energy_per_site,degeneracy,r,txx,tyy,tzz,m,c_tilde,c,"
           "c_tilde_ssb,c_ssb,wootters,entropy\n";
    for (const auto& [c, rep] : pairs) {
      out << sol.n_sites << ',' << io::format_number(sol.delta) << ','
          << io::format_number(sol.energy) << ',' << io::format_number(sol.energy_per_site)
          << ',' << sol.degeneracy << ',' << c.r << ',' << io::format_number(c.txx) << ','
          << io::format_number(c.tyy) << ',' << io::format_number(c.tzz) << ','
          << io::format_number(c.m) << ',' << io::format_number(rep.c_tilde) << ','
          << io::format_number(rep.c) << ',' << io::format_number(rep.c_tilde_ssb) << ','
          << io::format_number(rep.c_ssb) << ',' << io::format_number(rep.wootters) << ','
          << io::format_number(entropy) << '\n';
    }
    return;
  }
  ordered_json doc;
  doc["config"] = config_echo(config);
  doc["energy"] = num(sol.energy);
  doc["energy_per_site"] = num(sol.energy_per_site);
  doc["e0"] = num(sol.energy_per_site / 4.0);
  doc["degeneracy"] = sol.degeneracy;
  doc["sz_sector"] = sol.sz_sector;
  doc["residual_below_1e-10"] = sol.residual <= oracle::kResidualTolerance;
  ordered_json list = ordered_json::array();
  for (const auto& [c, rep] : pairs) list.push_back(pair_json(c, rep));
  doc["pairs"] = std::move(list);
  doc["entropy"] = num(entropy);
  out << doc.dump(2) << '\n';
}

std::vector<int> parse_separations(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("r: '" + text + "' is not a comma-separated list of integers");
    }
  }
  return out;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':', 1);
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::string lo = text.substr(0, colon);
    const std::string hi = text.substr(colon + 1);
    const double a = std::stod(lo, &used_lo);
    const double b = std::stod(hi, &used_hi);
    if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::exception&) {
    throw DomainError("range: '" + text + "' is not of the form lo:hi");
  }
}

}  // namespace

void validate(const RunConfig& config) {
  const auto fail = [](const std::string& message) { throw DomainError(message); };
  switch (config.subcommand) {
    case Subcommand::Point:
      if (!config.delta) fail("delta: required for point");
      break;
    case Subcommand::Oracle:
      if (!config.delta) fail("delta: required for oracle");
      break;
    case Subcommand::Sweep:
      if (!config.range) fail("range: required for sweep");
      break;
    case Subcommand::Scan:
      if (!config.range && !config.input) fail("range: required for scan without --input");
      break;
  }
  if (config.separations.empty()) fail("r: at least one separation is required");
  if (config.jump_threshold && !(*config.jump_threshold > 0.0)) {
    fail("jump-threshold: must be positive");
  }
  if (config.slope_threshold && !(*config.slope_threshold > 0.0)) {
    fail("slope-threshold: must be positive");
  }
  if (config.threads < 0) fail("threads: must be non-negative");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    std::ostringstream buffer;
    switch (config.subcommand) {
      case Subcommand::Point: run_point(config, buffer, err); break;
      case Subcommand::Sweep: run_sweep(config, buffer); break;
      case Subcommand::Oracle: run_oracle(config, buffer); break;
      case Subcommand::Scan: run_scan(config, buffer); break;
    }
    if (config.output) {
      std::ofstream file(*config.output, std::ios::binary);
      if (!file) throw DomainError("output: cannot write '" + *config.output + "'");
      file << buffer.str();
    } else {
      out << buffer.str();
    }
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"XXZ chain entanglement and transition analysis"};
  app.require_subcommand(1);
  RunConfig config;
  std::string r_list = "1";
  std::string range_text;
  std::string format_text;
  std::string boundary_text = "periodic";
  std::string mode_text = "symmetric";
  bool broken = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--r", r_list, "Comma-separated separations, e.g. 1,2,3");
    sub->add_option("--format", format_text, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", config.output, "Write to this file instead of stdout");
    sub->add_option("--threads", config.threads, "Worker threads (0: automatic)");
  };

  CLI::App* point = app.add_subcommand("point", "Evaluate all quantities at one delta");
  point->add_option("--delta", config.delta, "Anisotropy")->required();
  point->add_flag("--ssb", config.ssb, "Magnetize the ferro phase (m = 1)");
  point->add_flag("--debug", config.debug, "Diagnostics on stderr");
  add_common(point);

  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate all signals on a delta grid");
  sweep->add_option("--range", range_text, "lo:hi")->required();
  sweep->add_option("--points", config.n_points, "Grid points");
  sweep->add_flag("--ssb", config.ssb, "Magnetize the ferro phase (m = 1)");
  sweep->add_option("--jump-threshold", config.jump_threshold);
  sweep->add_option("--slope-threshold", config.slope_threshold);
  add_common(sweep);

  CLI::App* orc = app.add_subcommand("oracle", "Exact diagonalization of a finite chain");
  orc->add_option("--delta", config.delta, "Anisotropy")->required();
  orc->add_option("--sites", config.sites, "Chain length (2..16)");
  orc->add_option("--boundary", boundary_text, "periodic or open")
      ->check(CLI::IsMember({"periodic", "open"}));
  orc->add_option("--sector", config.sector, "Restrict to 2Sz = n_up - n_down");
  orc->add_flag("--broken", broken, "Use the magnetized state of a two-fold ground space");
  add_common(orc);

  CLI::App* scan = app.add_subcommand("scan", "Detect and classify non-analytic points");
  scan->add_option("--range", range_text, "lo:hi");
  scan->add_option("--points", config.n_points, "Grid points");
  scan->add_option("--signal", config.signal, "Signal name, e.g. c, c_ssb, entropy_ssb");
  scan->add_option("--mode", mode_text, "symmetric or ssb")
      ->check(CLI::IsMember({"symmetric", "ssb"}));
  scan->add_option("--input", config.input, "Scan a sweep JSON file instead of computing one");
  scan->add_option("--jump-threshold", config.jump_threshold);
  scan->add_option("--slope-threshold", config.slope_threshold);
  add_common(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  try {
    config.separations = parse_separations(r_list);
    if (!range_text.empty()) config.range = parse_range(range_text);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  if (!format_text.empty()) config.format = format_text == "csv" ? Format::Csv : Format::Json;
  config.boundary = boundary_text == "open" ? oracle::Boundary::Open : oracle::Boundary::Periodic;
  config.symmetrize = !broken;
  if (*point) config.subcommand = Subcommand::Point;
  if (*sweep) config.subcommand = Subcommand::Sweep;
  if (*orc) config.subcommand = Subcommand::Oracle;
  if (*scan) {
    config.subcommand = Subcommand::Scan;
    config.ssb = mode_text == "ssb";
  }
  return run(config, out, err);
}

}  // namespace xxz::cli
