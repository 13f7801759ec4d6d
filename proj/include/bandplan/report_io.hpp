#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "config_optimizer.hpp"
#include "scenario.hpp"

namespace bandplan {

// Thrown with file:line context when a scenario file cannot be parsed.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& name);
ScenarioConfig parse_scenario_file(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(std::uint64_t h);
std::string read_file(const std::string& path);  // throws ParseError if unreadable
void write_file(const std::string& path, const std::string& content);

// Numbers are printed with %.17g so every double round-trips exactly.
std::string format_double(double v);

// One CSV row; fields containing commas, quotes, or newlines are quoted.
std::string csv_row(const std::vector<std::string>& fields);

// report.txt: the optimized configuration in the same key = value format the
// scenario uses, including the scenario hash and the plans.csv file name.
void write_report(const std::string& dir, const ScenarioConfig& sc, const ConfigReport& rep,
                  const std::string& scenario_hash);

struct LoadedReport {
  ConfigReport rep;
  std::string scenario_hash;
};

// Reads report.txt and the plans.csv it names (resolved next to it).
LoadedReport read_report(const std::string& report_path);

void write_plans_csv(const std::string& path, const std::vector<double>& distances,
                     const std::vector<double>& alphas, const std::vector<LinkPlan>& plans);

// manifest.txt: what produced the artifacts. All lines are stable across
// reruns except the wall_clock line.
void write_manifest(const std::string& path, const std::string& command,
                    const std::string& scenario_path, const std::string& scenario_hash,
                    const std::vector<std::string>& outputs);

}  // namespace bandplan
