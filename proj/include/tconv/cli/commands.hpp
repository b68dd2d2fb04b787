#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tconv/cli/scenario.hpp"

namespace tconv::cli {

/// Per-command selectors; from flags on the command line or fields of a task record.
struct Params {
  std::optional<std::string> point;
  std::optional<std::string> measure;
  std::optional<std::string> beta;    // "p/q,p/q,..."
  std::optional<std::string> target;  // "p/q,p/q,..."
  std::optional<std::string> v;       // "0.5,-1"
  std::string xspec = "full";         // full | real | pattern
  std::optional<std::string> pattern; // "0,2"
};

struct Options {
  std::string command;
  std::string scenario;
  std::optional<std::string> output;
  std::optional<std::string> svg;
  std::optional<std::string> csv;
  int samples = 500;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  Params params;
};

const std::vector<std::string>& command_names();

/**
 * Runs one command against a loaded scenario and returns the report
 * {command, scenario_hash, seed, results, failures}. Throws InputError for
 * bad parameters. SVG/CSV artifacts are written as a side effect.
 */
nlohmann::json execute(const Scenario& sc, const Options& opt);

/// Full front end: load, execute, write the report. Returns the exit code (0 ok, 1 failures, 2 bad input).
int run(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace tconv::cli
