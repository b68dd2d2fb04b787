#include "tconv/cli/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "tconv/io.hpp"

namespace tconv::cli {
namespace {

using nlohmann::json;

std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw ScenarioError(path, "expected an object");
  if (!obj.contains(key)) throw ScenarioError(path, std::string("missing field \"") + key + "\"");
  return obj[key];
}

// Rethrow module-level input errors with the JSON path attached.
template <class F>
auto at_field(const std::string& path, F&& fn) {
  try {
    return fn();
  } catch (const ScenarioError&) {
    throw;
  } catch (const InputError& e) {
    throw ScenarioError(path, e.what());
  }
}

WeightSystem parse_weights(const json& root) {
  const json& dim = require(root, "$", "dim_a");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0)
    throw ScenarioError("dim_a", "must be a positive integer");
  const json& ws = require(root, "$", "weights");
  if (!ws.is_array() || ws.empty()) throw ScenarioError("weights", "must be a nonempty array");
  std::vector<RationalVec> weights;
  for (std::size_t i = 0; i < ws.size(); ++i)
    weights.push_back(at_field(at("weights", i), [&] { return io::rational_vec_from_json(ws[i]); }));
  return at_field("weights", [&] { return WeightSystem(dim.get<std::size_t>(), std::move(weights)); });
}

}  // namespace

const NamedPoint& Scenario::point(const std::string& name) const {
  for (const auto& p : points)
    if (p.name == name) return p;
  throw InputError("no point named \"" + name + "\" in the scenario");
}

const NamedMeasure& Scenario::measure(const std::string& name) const {
  for (const auto& m : measures)
    if (m.name == name) return m;
  throw InputError("no measure named \"" + name + "\" in the scenario");
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("$", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ScenarioError("$", "scenario must be a JSON object");

  Scenario sc{parse_weights(root), {}, {}, {}, content_hash(text)};
  const std::size_t n1 = sc.weights.size();

  if (root.contains("points")) {
    const json& pts = root["points"];
    if (!pts.is_array()) throw ScenarioError("points", "must be an array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string path = at("points", i);
      const json& name = require(pts[i], path, "name");
      if (!name.is_string()) throw ScenarioError(path + ".name", "must be a string");
      if (!names.insert(name.get<std::string>()).second) throw ScenarioError(path + ".name", "duplicate point name");
      ProjPoint p = at_field(path, [&] { return io::point_from_json(pts[i]); });
      if (p.size() != n1) {
        throw ScenarioError(path + ".coords", "has " + std::to_string(p.size()) + " coordinates, weights define " +
                                                  std::to_string(n1));
      }
      sc.points.push_back({name.get<std::string>(), std::move(p)});
    }
  }

  if (root.contains("measures")) {
    const json& ms = root["measures"];
    if (!ms.is_array()) throw ScenarioError("measures", "must be an array");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string path = at("measures", i);
      const json& name = require(ms[i], path, "name");
      if (!name.is_string()) throw ScenarioError(path + ".name", "must be a string");
      const json& atoms = require(ms[i], path, "atoms");
      if (!atoms.is_array() || atoms.empty()) throw ScenarioError(path + ".atoms", "must be a nonempty array");
      std::vector<Atom> list;
      std::vector<std::size_t> refs;
      for (std::size_t j = 0; j < atoms.size(); ++j) {
        const std::string apath = at(path + ".atoms", j);
        const json& ref = require(atoms[j], apath, "point");
        std::size_t idx = 0;
        if (ref.is_number_unsigned()) {
          idx = ref.get<std::size_t>();
          if (idx >= sc.points.size()) throw ScenarioError(apath + ".point", "index out of range");
        } else if (ref.is_string()) {
          idx = at_field(apath + ".point", [&] {
            const auto& p = sc.point(ref.get<std::string>());
            return static_cast<std::size_t>(&p - sc.points.data());
          });
        } else {
          throw ScenarioError(apath + ".point", "must be a point index or name");
        }
        Rational w = at_field(apath + ".weight", [&] { return io::rational_from_json(require(atoms[j], apath, "weight")); });
        list.push_back({sc.points[idx].point, w});
        refs.push_back(idx);
      }
      DiscreteMeasure nu = at_field(path, [&] { return DiscreteMeasure(std::move(list)); });
      sc.measures.push_back({name.get<std::string>(), std::move(nu), std::move(refs)});
    }
  }

  if (root.contains("tasks")) {
    const json& ts = root["tasks"];
    if (!ts.is_array()) throw ScenarioError("tasks", "must be an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string path = at("tasks", i);
      const json& cmd = require(ts[i], path, "command");
      if (!cmd.is_string()) throw ScenarioError(path + ".command", "must be a string");
      json params = ts[i];
      params.erase("command");
      sc.tasks.push_back({cmd.get<std::string>(), std::move(params)});
    }
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("$", "cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace tconv::cli
