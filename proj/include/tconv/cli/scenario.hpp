#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tconv/errors.hpp"
#include "tconv/measures.hpp"
#include "tconv/weights.hpp"

namespace tconv::cli {

/// A scenario that failed to parse or validate; `field` is a JSON path like "points[2].support".
class ScenarioError : public InputError {
 public:
  ScenarioError(std::string field, const std::string& message)
      : InputError(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct NamedPoint {
  std::string name;
  ProjPoint point;
};

struct NamedMeasure {
  std::string name;
  DiscreteMeasure measure;
  std::vector<std::size_t> atom_points;  // indices into Scenario::points
};

struct Task {
  std::string command;
  nlohmann::json params;  // remaining fields of the task record
};

/**
 * Unit of work for the command line.
 *
 * {
 *   "dim_a": 2,
 *   "weights": [["0/1","0/1"], ["1/1","0/1"], ["0/1","1/1"]],
 *   "points":   [{"name": "x0", "coords": [[1,0],[0,0],[0,0]], "support": [0]}],
 *   "measures": [{"name": "nu", "atoms": [{"point": 0, "weight": "1/2"}, {"point": "x0", "weight": "1/2"}]}],
 *   "tasks":    [{"command": "moment", "point": "x0"}]
 * }
 *
 * Atom "point" is an index into "points" or a point name. "points",
 * "measures" and "tasks" are optional.
 */
struct Scenario {
  WeightSystem weights;
  std::vector<NamedPoint> points;
  std::vector<NamedMeasure> measures;
  std::vector<Task> tasks;
  std::string hash;  // of the raw file bytes

  const NamedPoint& point(const std::string& name) const;
  const NamedMeasure& measure(const std::string& name) const;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// "fnv1a64:<16 hex digits>" of the bytes.
std::string content_hash(const std::string& bytes);

}  // namespace tconv::cli
