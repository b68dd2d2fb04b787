#include "tconv/cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "tconv/cli/render.hpp"
#include "tconv/cli/suite.hpp"
#include "tconv/errors.hpp"
#include "tconv/io.hpp"
#include "tconv/measures.hpp"
#include "tconv/orbitgeom.hpp"

namespace tconv::cli {

using nlohmann::json;

namespace {

struct Context {
  const Scenario& sc;
  const Options& opt;
  const Params& p;
  json failures = json::array();
};

std::vector<const NamedPoint*> selected_points(const Context& c) {
  if (c.p.point) return {&c.sc.point(*c.p.point)};
  if (c.sc.points.empty()) throw InputError("scenario defines no points");
  std::vector<const NamedPoint*> out;
  for (const auto& p : c.sc.points) out.push_back(&p);
  return out;
}

std::vector<const NamedMeasure*> selected_measures(const Context& c) {
  if (c.p.measure) return {&c.sc.measure(*c.p.measure)};
  if (c.sc.measures.empty()) throw InputError("scenario defines no measures");
  std::vector<const NamedMeasure*> out;
  for (const auto& m : c.sc.measures) out.push_back(&m);
  return out;
}

RationalVec vector_param(const std::optional<std::string>& s, const char* name, std::size_t k) {
  if (!s) throw InputError(std::string("missing --") + name);
  RationalVec v = parse_rational_vec(*s);
  if (v.size() != k)
    throw InputError(std::string("--") + name + " has " + std::to_string(v.size()) + " entries, expected " +
                     std::to_string(k));
  return v;
}

Eigen::VectorXd real_vector_param(const std::optional<std::string>& s, std::size_t k) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  if (!s) return v;
  std::vector<double> vals;
  std::stringstream ss(*s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("--v: cannot parse '" + item + "' as a number");
    }
  }
  if (vals.size() != k)
    throw InputError("--v has " + std::to_string(vals.size()) + " entries, expected " + std::to_string(k));
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isfinite(vals[i])) throw InputError("--v entries must be finite");
    v[static_cast<Eigen::Index>(i)] = vals[i];
  }
  return v;
}

std::vector<MomentSample> sample_moments(const WeightSystem& W, const ProjPoint& x, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  std::vector<MomentSample> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int s = 0; s < n; ++s) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(W.dim_a()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = U(rng);
    out.push_back({v, moment_map_at(W, x, v)});
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

json cmd_moment(Context& c) {
  const auto& W = c.sc.weights;
  json out = json::array();
  for (const auto* np : selected_points(c)) {
    const auto v = real_vector_param(c.p.v, W.dim_a());
    const ProjPoint y = act(W, v, np->point);
    out.push_back({{"point", np->name},
                   {"v", io::to_json(v)},
                   {"moment", io::to_json(moment_map(W, y))},
                   {"rational_moment", io::to_json(rational_moment(W, y))},
                   {"stabilizer", io::to_json(stabilizer_algebra(W, y))},
                   {"fixed", is_fixed(W, y)}});
  }
  return out;
}

json cmd_kn(Context& c) {
  const auto& W = c.sc.weights;
  const auto v = real_vector_param(c.p.v, W.dim_a());
  json out = json::array();
  for (const auto* np : selected_points(c)) {
    const auto report = check_properties(PointModel(W, np->point), 100, c.opt.seed);
    if (!report.pass()) c.failures.push_back({{"check", "kempfness.axioms"}, {"subject", np->name}});
    out.push_back({{"point", np->name},
                   {"v", io::to_json(v)},
                   {"evaluation", io::to_json(kn_derivatives(W, np->point, v))},
                   {"properties", io::to_json(report)}});
  }
  return out;
}

json cmd_orbit(Context& c) {
  const auto& W = c.sc.weights;
  const auto pts = selected_points(c);
  if ((c.opt.svg || c.opt.csv) && pts.size() != 1) throw InputError("--svg/--csv need a single --point");
  json out = json::array();
  for (const auto* np : pts) {
    const Polytope P = orbit_polytope(W, np->point);
    const Subalgebra stab = stabilizer_algebra(W, np->point);
    const auto samples = sample_moments(W, np->point, c.opt.samples, c.opt.seed);
    // Largest overshoot of a sample beyond a facet; should be ~0.
    double overshoot = 0;
    for (const auto& f : facets(P)) {
      const double h = support_function(P, f.selector).get_d();
      const Eigen::VectorXd n = to_double(f.selector);
      for (const auto& s : samples) overshoot = std::max(overshoot, s.mu.dot(n) - h);
    }
    if (c.opt.csv) write_file(*c.opt.csv, samples_csv(samples));
    if (c.opt.svg) write_file(*c.opt.svg, polytope_svg(P, samples));
    out.push_back({{"point", np->name},
                   {"polytope", io::to_json(P)},
                   {"stabilizer", io::to_json(stab)},
                   {"orbit_directions", io::to_json(stab.orthogonal_complement())},
                   {"samples", c.opt.samples},
                   {"max_facet_overshoot", overshoot}});
  }
  return out;
}

json cmd_flow(Context& c) {
  const auto& W = c.sc.weights;
  const RationalVec beta = vector_param(c.p.beta, "beta", W.dim_a());
  json out = json::array();
  for (const auto* np : selected_points(c)) {
    const auto flow = flow_limit(W, np->point, beta);
    json item{{"point", np->name}, {"beta", io::to_json(beta)}, {"flow", io::to_json(flow)}};
    if (!is_zero(beta)) {
      const Rational xmax = projective_max(W, beta);
      item["critical"] = io::to_json(critical_data(W, beta));
      item["x_max"] = io::to_json(xmax);
      item["reaches_x_max"] = wmax_membership(W, np->point, beta, xmax);
      std::vector<double> times;
      for (int t = 0; t <= 20; ++t) times.push_back(t);
      item["profile"] = {{"gap_scale", io::to_json(gap_scale(W, np->point, beta))},
                         {"t", times},
                         {"value", flow_profile(W, np->point, gap_normalized(W, np->point, beta), times)}};
      const auto b = boundary_stabilizer_check(W, np->point, beta);
      item["boundary"] = io::to_json(b);
      if (!b.pass) c.failures.push_back({{"check", "orbitgeom.boundary_stabilizer"}, {"subject", np->name}});
    }
    out.push_back(item);
  }
  return out;
}

json cmd_invert(Context& c) {
  const auto& W = c.sc.weights;
  const RationalVec target = vector_param(c.p.target, "target", W.dim_a());
  NewtonOptions nopt;
  nopt.tol = c.opt.tol;
  json out = json::array();
  for (const auto* np : selected_points(c)) {
    const auto r = invert_moment(W, np->point, target, nopt);
    out.push_back({{"point", np->name},
                   {"target", io::to_json(target)},
                   {"inversion", io::to_json(r)},
                   {"moment", io::to_json(moment_map_at(W, np->point, r.v))}});
  }
  return out;
}

json cmd_faces(Context& c) {
  const auto& W = c.sc.weights;
  json out = json::array();
  for (const auto* np : selected_points(c)) {
    const Polytope P = orbit_polytope(W, np->point);
    json faces = json::array();
    for (const auto& f : proper_faces(P)) {
      const auto fo = face_orbit(W, np->point, f.selector);
      if (!fo.matches_exposed_face)
        c.failures.push_back({{"check", "orbitgeom.face_orbit"},
                              {"subject", np->name},
                              {"selector", io::to_json(f.selector)}});
      faces.push_back({{"face", io::to_json(f)},
                       {"dim", face_polytope(P, f).dim()},
                       {"orbit_point", io::to_json(fo.y)},
                       {"matches", fo.matches_exposed_face}});
    }
    json verts = json::array();
    for (const auto& w : vertex_witnesses(W, np->point)) {
      if (!w.fixed || !w.matches)
        c.failures.push_back({{"check", "orbitgeom.vertex_attainment"},
                              {"subject", np->name},
                              {"vertex", io::to_json(w.vertex)}});
      verts.push_back({{"vertex", io::to_json(w.vertex)},
                       {"beta", io::to_json(w.beta)},
                       {"fixed", w.fixed},
                       {"matches", w.matches}});
    }
    out.push_back({{"point", np->name}, {"polytope", io::to_json(P)}, {"faces", faces}, {"vertices", verts}});
  }
  return out;
}

json cmd_density(Context& c) {
  XSpec spec;
  if (c.p.xspec == "full") {
    spec.family = SampleFamily::FullSupport;
  } else if (c.p.xspec == "real") {
    spec.family = SampleFamily::RealPoints;
  } else if (c.p.xspec == "pattern") {
    spec.family = SampleFamily::SupportPattern;
    if (!c.p.pattern) throw InputError("--xspec pattern needs --pattern");
    std::stringstream ss(*c.p.pattern);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const long i = std::stol(item, &used);
        if (i < 0 || item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        spec.pattern.push_back(static_cast<std::size_t>(i));
      } catch (const std::exception&) {
        throw InputError("--pattern: bad index '" + item + "'");
      }
    }
  } else {
    throw InputError("--xspec must be full, real or pattern");
  }
  return io::to_json(density_experiment(c.sc.weights, spec, c.opt.samples, c.opt.seed));
}

json cmd_measure(Context& c) {
  const auto& W = c.sc.weights;
  json out = json::array();
  for (const auto* nm : selected_measures(c)) {
    const auto& nu = nm->measure;
    json item{{"measure", nm->name},
              {"moment", io::to_json(measure_moment(W, nu))},
              {"rational_moment", io::to_json(measure_rational_moment(W, nu))},
              {"polytope", io::to_json(measure_orbit_polytope(W, nu))},
              {"stabilizer", io::to_json(measure_stabilizer(W, nu))},
              {"fixed", is_fixed(W, nu)}};
    json verts = json::array();
    for (const auto& w : measure_vertex_witnesses(W, nu)) {
      if (!w.fixed || !w.matches)
        c.failures.push_back({{"check", "measures.vertex_attainment"},
                              {"subject", nm->name},
                              {"vertex", io::to_json(w.vertex)}});
      verts.push_back(
          {{"vertex", io::to_json(w.vertex)}, {"beta", io::to_json(w.beta)}, {"fixed", w.fixed}, {"matches", w.matches}});
    }
    item["vertices"] = verts;
    if (c.p.target) {
      const RationalVec target = vector_param(c.p.target, "target", W.dim_a());
      NewtonOptions nopt;
      nopt.tol = c.opt.tol;
      const auto r = measure_invert(W, nu, target, nopt);
      item["target"] = io::to_json(target);
      item["inversion"] = io::to_json(r);
      item["moment_after"] = io::to_json(measure_moment_at(W, nu, r.v));
    }
    out.push_back(item);
  }
  return out;
}

json invariant_json(const InvariantResult& r) {
  return {{"name", r.name}, {"subject", r.subject}, {"pass", r.pass},
          {"checked", r.checked}, {"worst", r.worst}, {"detail", r.detail}};
}

json cmd_verify(Context& c) {
  const auto& W = c.sc.weights;
  SuiteOptions so;
  so.samples = c.opt.samples;
  so.seed = c.opt.seed;
  so.tol = c.opt.tol;
  std::vector<InvariantResult> all;
  auto add = [&](std::vector<InvariantResult> rs) {
    for (auto& r : rs) all.push_back(std::move(r));
  };
  add(verify_weights(W, so));
  if (c.p.point || !c.sc.points.empty())
    for (const auto* np : selected_points(c)) add(verify_point(W, *np, so));
  if (c.p.measure || !c.sc.measures.empty())
    for (const auto* nm : selected_measures(c)) add(verify_measure(W, *nm, so));
  json out = json::array();
  for (const auto& r : all) {
    out.push_back(invariant_json(r));
    if (!r.pass) c.failures.push_back({{"check", r.name}, {"subject", r.subject}, {"detail", r.detail}});
  }
  return out;
}

json dispatch(Context& c, const std::string& command);

std::optional<std::string> field_string(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const json& f = j.at(key);
  if (f.is_string()) return f.get<std::string>();
  if (f.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) s += ',';
      if (f[i].is_string()) s += f[i].get<std::string>();
      else if (f[i].is_number()) s += f[i].dump();
      else throw ScenarioError(std::string("tasks[].") + key, "entries must be strings or numbers");
    }
    return s;
  }
  if (f.is_number()) return f.dump();
  throw ScenarioError(std::string("tasks[].") + key, "must be a string or an array");
}

json cmd_run(Context& c) {
  if (c.sc.tasks.empty()) throw InputError("scenario has no tasks");
  json out = json::array();
  for (std::size_t t = 0; t < c.sc.tasks.size(); ++t) {
    const Task& task = c.sc.tasks[t];
    if (task.command == "run") throw ScenarioError("tasks[" + std::to_string(t) + "].command", "run cannot nest");
    Params p;
    p.point = field_string(task.params, "point");
    p.measure = field_string(task.params, "measure");
    p.beta = field_string(task.params, "beta");
    p.target = field_string(task.params, "target");
    p.v = field_string(task.params, "v");
    p.pattern = field_string(task.params, "pattern");
    if (auto x = field_string(task.params, "xspec")) p.xspec = *x;
    Options o = c.opt;
    o.svg.reset();
    o.csv.reset();
    if (task.params.contains("samples")) o.samples = task.params.at("samples").get<int>();
    if (task.params.contains("seed")) o.seed = task.params.at("seed").get<std::uint64_t>();
    Context sub{c.sc, o, p};
    json res = dispatch(sub, task.command);
    for (auto& f : sub.failures) {
      f["task"] = t;
      c.failures.push_back(f);
    }
    out.push_back({{"task", t}, {"command", task.command}, {"results", res}});
  }
  return out;
}

json dispatch(Context& c, const std::string& command) {
  if (command == "moment") return cmd_moment(c);
  if (command == "kn") return cmd_kn(c);
  if (command == "orbit") return cmd_orbit(c);
  if (command == "flow") return cmd_flow(c);
  if (command == "invert") return cmd_invert(c);
  if (command == "faces") return cmd_faces(c);
  if (command == "density") return cmd_density(c);
  if (command == "measure") return cmd_measure(c);
  if (command == "verify") return cmd_verify(c);
  if (command == "run") return cmd_run(c);
  throw InputError("unknown command '" + command + "'");
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"moment", "kn",      "orbit",   "flow",   "invert",
                                              "faces",  "density", "measure", "verify", "run"};
  return names;
}

json execute(const Scenario& sc, const Options& opt) {
  if (opt.samples < 0) throw InputError("--samples must be non-negative");
  if (!(opt.tol > 0)) throw InputError("--tol must be positive");
  Context c{sc, opt, opt.params};
  json results = dispatch(c, opt.command);
  return {{"command", opt.command},
          {"scenario_hash", sc.hash},
          {"seed", opt.seed},
          {"results", std::move(results)},
          {"failures", std::move(c.failures)}};
}

int run(const Options& opt, std::ostream& out, std::ostream& err) {
  json report;
  try {
    const Scenario sc = load_scenario(opt.scenario);
    report = execute(sc, opt);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (residual " << e.residual() << " after " << e.iterations() << " iterations)\n";
    return 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  const std::string text = report.dump(2) + "\n";
  if (opt.output) {
    std::ofstream f(*opt.output, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << *opt.output << '\n';
      return 2;
    }
    f << text;
  } else {
    out << text;
  }
  if (!report["failures"].empty()) {
    err << report["failures"].size() << " check(s) failed\n";
    return 1;
  }
  return 0;
}

}  // namespace tconv::cli
