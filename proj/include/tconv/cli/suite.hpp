#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tconv/cli/scenario.hpp"

namespace tconv::cli {

struct InvariantResult {
  std::string name;
  std::string subject;  // point / measure / weight system the check ran on
  bool pass = true;
  int checked = 0;
  double worst = 0;     // largest residual or violation, where meaningful
  std::string detail;   // first failure, if any
};

struct SuiteOptions {
  int samples = 500;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int kn_trials = 100;
  int targets = 50;        // Legendre round-trips and midpoints
  int betas = 50;          // face functoriality, flow profiles
  int support_betas = 100;
  double support_time = 30.0;
};

/// Weight-system level: hull idempotence, density on full-support and real samples.
std::vector<InvariantResult> verify_weights(const WeightSystem& W, const SuiteOptions& opt);

/// Every per-point invariant of the weights, kempfness and orbitgeom modules.
std::vector<InvariantResult> verify_point(const WeightSystem& W, const NamedPoint& p, const SuiteOptions& opt);

/// Measure-level invariants: Kempf-Ness axioms for Psi_M, Minkowski oracle, inversion.
std::vector<InvariantResult> verify_measure(const WeightSystem& W, const NamedMeasure& m, const SuiteOptions& opt);

}  // namespace tconv::cli
