#pragma once

#include <json.hpp>

#include "tconv/hull.hpp"
#include "tconv/kempfness.hpp"
#include "tconv/measures.hpp"
#include "tconv/orbitgeom.hpp"

// JSON shapes for reports. Rationals are "p/q" strings, residuals are plain
// numbers, points are {"coords": [[re, im], ...], "support": [...]}.
namespace tconv::io {

using nlohmann::json;

json to_json(const Rational& q);
json to_json(const RationalVec& v);
json to_json(const Eigen::VectorXd& v);
json to_json(const Eigen::MatrixXd& m);
json to_json(const ProjPoint& x);
json to_json(const Polytope& P);
json to_json(const Face& f);
json to_json(const Subalgebra& s);
json to_json(const PropertyReport& r);
json to_json(const FlowResult& f);
json to_json(const CriticalData& c);
json to_json(const InversionResult& r);
json to_json(const DensityReport& r);
json to_json(const BoundaryReport& r);
json to_json(const KNEvaluation& e);
json to_json(const DiscreteMeasure& nu);

/// Parses "p/q" (or an integer) from a JSON string; InputError otherwise.
Rational rational_from_json(const json& j);
RationalVec rational_vec_from_json(const json& j);

/// {"coords": [[re, im], ...], "support": [...]}; the support is required.
ProjPoint point_from_json(const json& j);

}  // namespace tconv::io
