#include "tconv/measures.hpp"

#include "tconv/errors.hpp"
#include "tconv/lp.hpp"
#include "tconv/orbitgeom.hpp"

namespace tconv {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InputError("measure: no atoms");
  Rational total(0);
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    if (atoms_[j].weight <= 0) throw InputError("measure: atom " + std::to_string(j) + " has nonpositive weight");
    if (atoms_[j].point.size() != atoms_.front().point.size())
      throw InputError("measure: atoms live in projective spaces of different dimension");
    total += atoms_[j].weight;
  }
  if (total != 1) throw InputError("measure: weights sum to " + format_rational(total) + ", not 1");
}

DiscreteMeasure pushforward(const WeightSystem& W, const Eigen::VectorXd& v, const DiscreteMeasure& nu) {
  std::vector<Atom> moved;
  moved.reserve(nu.size());
  for (const auto& a : nu.atoms()) moved.push_back(Atom{act(W, v, a.point), a.weight});
  return DiscreteMeasure(std::move(moved));
}

double measure_kn(const WeightSystem& W, const DiscreteMeasure& nu, const Eigen::VectorXd& v) {
  double acc = 0;
  for (const auto& a : nu.atoms()) acc += a.weight.get_d() * kn_value(W, a.point, v);
  return acc;
}

Eigen::VectorXd measure_moment_at(const WeightSystem& W, const DiscreteMeasure& nu, const Eigen::VectorXd& v) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(W.dim_a()));
  for (const auto& a : nu.atoms()) acc += a.weight.get_d() * moment_map_at(W, a.point, v);
  return acc;
}

Eigen::VectorXd measure_moment(const WeightSystem& W, const DiscreteMeasure& nu) {
  return measure_moment_at(W, nu, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(W.dim_a())));
}

RationalVec measure_rational_moment(const WeightSystem& W, const DiscreteMeasure& nu) {
  RationalVec acc = zeros(W.dim_a());
  for (const auto& a : nu.atoms()) acc = acc + a.weight * rational_moment(W, a.point);
  return acc;
}

Eigen::MatrixXd measure_hessian(const WeightSystem& W, const DiscreteMeasure& nu, const Eigen::VectorXd& v) {
  const auto k = static_cast<Eigen::Index>(W.dim_a());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(k, k);
  for (const auto& a : nu.atoms()) H += a.weight.get_d() * kn_derivatives(W, a.point, v).hessian;
  return H;
}

Polytope measure_orbit_polytope(const WeightSystem& W, const DiscreteMeasure& nu) {
  std::vector<WeightedPolytope> terms;
  for (const auto& a : nu.atoms()) terms.push_back({a.weight, orbit_polytope(W, a.point)});
  return minkowski_sum(terms);
}

namespace {

RationalMatrix atom_differences(const WeightSystem& W, const DiscreteMeasure& nu) {
  RationalMatrix rows;
  for (const auto& a : nu.atoms()) {
    check_compatible(W, a.point);
    const Subalgebra diffs = weight_differences(W, a.point.support());
    const auto& b = diffs.basis();
    rows.insert(rows.end(), b.begin(), b.end());
  }
  return rows;
}

}  // namespace

Subalgebra measure_stabilizer(const WeightSystem& W, const DiscreteMeasure& nu) {
  return Subalgebra(W.dim_a(), atom_differences(W, nu)).orthogonal_complement();
}

Membership measure_contains(const WeightSystem& W, const DiscreteMeasure& nu, const RationalVec& q) {
  const std::size_t k = W.dim_a();
  if (q.size() != k) throw InputError("measure_contains: point has the wrong dimension");
  RationalVec base = zeros(k);
  for (const auto& a : nu.atoms()) base = base + a.weight * W.weight(a.point.support().front());
  if (!Subalgebra(k, atom_differences(W, nu)).contains(q - base)) return Membership::OffAffineHull;

  // columns: mu_{j,i} for every atom j and i in its support, then s.
  // q = sum_j w_j sum_i (mu_ji + s) alpha_i,  sum_i mu_ji + |S_j| s = 1,  maximize s.
  std::size_t cols = 0;
  for (const auto& a : nu.atoms()) cols += a.point.support().size();
  const std::size_t m = nu.size();
  RationalMatrix A(k + m, RationalVec(cols + 1, Rational(0)));
  RationalVec b(k + m, Rational(0));
  std::size_t col = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const Atom& a = nu.atoms()[j];
    for (auto i : a.point.support()) {
      for (std::size_t c = 0; c < k; ++c) {
        const Rational e = a.weight * W.weight(i)[c];
        A[c][col] = e;
        A[c][cols] += e;
      }
      A[k + j][col] = 1;
      ++col;
    }
    A[k + j][cols] = static_cast<unsigned long>(a.point.support().size());
    b[k + j] = 1;
  }
  for (std::size_t c = 0; c < k; ++c) b[c] = q[c];
  RationalVec cost(cols + 1, Rational(0));
  cost[cols] = 1;
  const LpResult r = solve_lp(A, b, cost);
  if (r.status != LpStatus::Optimal) return Membership::Outside;
  return r.objective > 0 ? Membership::Interior : Membership::Boundary;
}

InversionResult measure_invert(const WeightSystem& W, const DiscreteMeasure& nu, const RationalVec& target,
                               const NewtonOptions& opts) {
  if (target.size() != W.dim_a()) throw InputError("measure_invert: target has the wrong dimension");
  const Membership m = measure_contains(W, nu, target);
  if (m != Membership::Interior) {
    throw TargetNotAttained("target " + format_rational_vec(target) + " is " + to_string(m) +
                            " of the measure orbit polytope; only relative-interior targets are attained");
  }
  const Eigen::MatrixXd B = orthonormal_basis(W.dim_a(), atom_differences(W, nu));
  const Eigen::VectorXd t = to_double(target);
  if (B.cols() == 0) {
    InversionResult r;
    r.v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(W.dim_a()));
    r.residual = (measure_moment(W, nu) - t).norm();
    return r;
  }
  ConvexPotential pot{
      [&](const Eigen::VectorXd& v) { return measure_kn(W, nu, v); },
      [&](const Eigen::VectorXd& v) { return measure_moment_at(W, nu, v); },
      [&](const Eigen::VectorXd& v) { return measure_hessian(W, nu, v); },
  };
  return newton_legendre(pot, t, B, opts);
}

DiscreteMeasure measure_flow_limit(const WeightSystem& W, const DiscreteMeasure& nu, const RationalVec& beta) {
  std::vector<Atom> limits;
  for (const auto& a : nu.atoms()) limits.push_back(Atom{flow_limit(W, a.point, beta).limit, a.weight});
  return DiscreteMeasure(std::move(limits));
}

bool is_fixed(const WeightSystem& W, const DiscreteMeasure& nu) {
  for (const auto& a : nu.atoms())
    if (!is_fixed(W, a.point)) return false;
  return true;
}

Rational measure_gap_scale(const WeightSystem& W, const DiscreteMeasure& nu, const RationalVec& beta) {
  Rational s(1);
  for (const auto& a : nu.atoms()) s = std::max(s, gap_scale(W, a.point, beta));
  return s;
}

std::vector<MeasureVertexWitness> measure_vertex_witnesses(const WeightSystem& W, const DiscreteMeasure& nu) {
  const Polytope P = measure_orbit_polytope(W, nu);
  std::vector<std::pair<RationalVec, RationalVec>> vertex_beta;
  if (P.dim() == 0) {
    vertex_beta.emplace_back(P.vertices().front(), zeros(W.dim_a()));
  } else {
    for (const auto& f : proper_faces(P))
      if (f.vertex_indices.size() == 1) vertex_beta.emplace_back(P.vertices()[f.vertex_indices[0]], f.selector);
  }
  std::vector<MeasureVertexWitness> out;
  for (auto& [vertex, beta] : vertex_beta) {
    const DiscreteMeasure lim = measure_flow_limit(W, nu, beta);
    out.push_back({vertex, beta, is_fixed(W, lim), measure_rational_moment(W, lim) == vertex});
  }
  return out;
}

}  // namespace tconv
