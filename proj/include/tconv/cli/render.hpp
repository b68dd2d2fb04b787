#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tconv/hull.hpp"

namespace tconv::cli {

struct MomentSample {
  Eigen::VectorXd v;
  Eigen::VectorXd mu;
};

/// Columns: v_1..v_k, mu_1..mu_k; one row per sample, %.17g.
std::string samples_csv(const std::vector<MomentSample>& samples);

/// Hull polygon plus the sampled moment cloud. Requires ambient dimension 2.
std::string polytope_svg(const Polytope& P, const std::vector<MomentSample>& samples);

}  // namespace tconv::cli
