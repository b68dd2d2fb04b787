#include "tconv/io.hpp"

#include "tconv/errors.hpp"

namespace tconv::io {

json to_json(const Rational& q) { return format_rational(q); }

json to_json(const RationalVec& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(format_rational(q));
  return out;
}

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Eigen::VectorXd(m.row(r).transpose())));
  return out;
}

json to_json(const ProjPoint& x) {
  json coords = json::array();
  for (const auto& z : x.coords()) coords.push_back({z.real(), z.imag()});
  return {{"coords", coords}, {"support", x.support()}};
}

json to_json(const Polytope& P) {
  json verts = json::array();
  for (const auto& v : P.vertices()) verts.push_back(to_json(v));
  json basis = json::array();
  for (const auto& b : P.affine_basis()) basis.push_back(to_json(b));
  return {{"ambient_dim", P.ambient_dim()},
          {"dim", P.dim()},
          {"vertices", verts},
          {"base_point", to_json(P.base_point())},
          {"affine_basis", basis}};
}

json to_json(const Face& f) { return {{"selector", to_json(f.selector)}, {"vertex_indices", f.vertex_indices}}; }

json to_json(const Subalgebra& s) {
  json basis = json::array();
  for (const auto& b : s.basis()) basis.push_back(to_json(b));
  return {{"dim", s.dim()}, {"basis", basis}};
}

json to_json(const PropertyReport& r) {
  auto entry = [](const PropertyResult& p) { return json{{"pass", p.pass}, {"worst", p.worst}, {"checked", p.checked}}; };
  json stab = entry(r.stabilizer);
  stab["worst_in_stabilizer"] = r.stabilizer_worst_in;
  stab["min_outside_stabilizer"] =
      r.stabilizer_out_count ? json(r.stabilizer_min_out) : json(nullptr);
  stab["in_count"] = r.stabilizer_in_count;
  stab["out_count"] = r.stabilizer_out_count;
  return {{"seed", r.seed},
          {"trials", r.trials},
          {"pass", r.pass()},
          {"cocycle", entry(r.cocycle)},
          {"gradient", entry(r.gradient)},
          {"convexity", entry(r.convexity)},
          {"stabilizer", stab}};
}

json to_json(const FlowResult& f) {
  return {{"limit", to_json(f.limit)},
          {"achieved_value", to_json(f.achieved_value)},
          {"limit_support", f.limit_support}};
}

json to_json(const CriticalData& c) {
  json levels = json::array();
  for (std::size_t i = 0; i < c.values.size(); ++i)
    levels.push_back({{"value", to_json(c.values[i])}, {"indices", c.level_supports[i]}});
  return levels;
}

json to_json(const InversionResult& r) {
  return {{"v", to_json(r.v)}, {"iterations", r.iterations}, {"residual", r.residual}};
}

json to_json(const DensityReport& r) {
  json members = json::array();
  for (std::size_t i = 0; i < r.vertex_membership.size(); ++i) {
    members.push_back({{"vertex", to_json(r.polytope.vertices()[i])},
                       {"count", r.vertex_membership[i]},
                       {"fraction", to_json(ratio(r.vertex_membership[i], r.samples))}});
  }
  return {{"family", to_string(r.family)},
          {"seed", r.seed},
          {"samples", r.samples},
          {"successes", r.successes},
          {"success_fraction", to_json(r.success_fraction())},
          {"polytope", to_json(r.polytope)},
          {"vertex_membership", members}};
}

json to_json(const BoundaryReport& r) {
  return {{"applicable", r.applicable},
          {"pass", r.pass},
          {"dim_stabilizer_x", r.dim_stab_x},
          {"dim_stabilizer_limit", r.dim_stab_y},
          {"limit_membership", to_string(r.limit_membership)}};
}

json to_json(const KNEvaluation& e) {
  return {{"value", e.value}, {"gradient", to_json(e.gradient)}, {"hessian", to_json(e.hessian)}};
}

json to_json(const DiscreteMeasure& nu) {
  json atoms = json::array();
  for (const auto& a : nu.atoms()) atoms.push_back({{"point", to_json(a.point)}, {"weight", to_json(a.weight)}});
  return atoms;
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("expected a rational string \"p/q\", got " + j.dump());
}

RationalVec rational_vec_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
  RationalVec out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

ProjPoint point_from_json(const json& j) {
  if (!j.is_object()) throw InputError("point must be an object");
  if (!j.contains("coords") || !j["coords"].is_array()) throw InputError("point: missing \"coords\" array");
  if (!j.contains("support") || !j["support"].is_array()) throw InputError("point: missing \"support\" array");
  std::vector<std::complex<double>> z;
  for (const auto& c : j["coords"]) {
    if (c.is_number()) {
      z.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      z.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else {
      throw InputError("point: coordinate must be [re, im], got " + c.dump());
    }
  }
  std::vector<std::size_t> support;
  for (const auto& s : j["support"]) {
    if (!s.is_number_unsigned()) throw InputError("point: support entries must be nonnegative integers");
    support.push_back(s.get<std::size_t>());
  }
  return ProjPoint(z, std::move(support));
}

}  // namespace tconv::io
