#include "tconv/hull.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "tconv/errors.hpp"
#include "tconv/lp.hpp"

namespace tconv {
namespace {

void check_dim(const RationalVec& v, std::size_t dim, const char* what) {
  if (v.size() != dim) {
    throw InputError(std::string(what) + ": dimension " + std::to_string(v.size()) +
                     " does not match ambient dimension " + std::to_string(dim));
  }
}

// Is p a convex combination of `others`? Exact LP feasibility.
bool in_convex_span(const std::vector<const RationalVec*>& others, const RationalVec& p) {
  if (others.empty()) return false;
  const std::size_t k = p.size();
  RationalMatrix A(k + 1, RationalVec(others.size()));
  RationalVec b(k + 1);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < others.size(); ++j) A[c][j] = (*others[j])[c];
    b[c] = p[c];
  }
  for (std::size_t j = 0; j < others.size(); ++j) A[k][j] = 1;
  b[k] = 1;
  return solve_lp(A, b, RationalVec(others.size(), Rational(0))).status == LpStatus::Optimal;
}

// max s such that q = sum_j (mu_j + s) v_j, sum_j (mu_j + s) = 1, mu, s >= 0.
LpResult interior_lp(const Polytope& P, const RationalVec& q) {
  const auto& V = P.vertices();
  const std::size_t m = V.size();
  const std::size_t k = P.ambient_dim();
  RationalMatrix A(k + 1, RationalVec(m + 1, Rational(0)));
  RationalVec b(k + 1);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < m; ++j) {
      A[c][j] = V[j][c];
      A[c][m] += V[j][c];
    }
    b[c] = q[c];
  }
  for (std::size_t j = 0; j < m; ++j) A[k][j] = 1;
  A[k][m] = static_cast<unsigned long>(m);
  b[k] = 1;
  RationalVec cost(m + 1, Rational(0));
  cost[m] = 1;
  return solve_lp(A, b, cost);
}

std::size_t affine_rank(const std::vector<RationalVec>& V, const std::vector<std::size_t>& idx) {
  if (idx.size() <= 1) return 0;
  RationalMatrix diffs;
  for (std::size_t i = 1; i < idx.size(); ++i) diffs.push_back(V[idx[i]] - V[idx[0]]);
  return row_echelon(diffs, V.front().size()).rank();
}

void for_each_subset(std::size_t n, std::size_t r, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  if (r > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "interior";
    case Membership::Boundary: return "boundary";
    case Membership::Outside: return "outside";
    case Membership::OffAffineHull: return "off-affine-hull";
  }
  return "?";
}

bool Polytope::in_affine_hull(const RationalVec& q) const {
  check_dim(q, ambient_dim_, "in_affine_hull");
  return affine_.spans(q - base_point());
}

Polytope convex_hull(const std::vector<RationalVec>& points) {
  if (points.empty()) throw InputError("convex_hull: empty point list");
  const std::size_t dim = points.front().size();
  for (const auto& p : points) check_dim(p, dim, "convex_hull");

  std::vector<RationalVec> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Polytope P;
  P.ambient_dim_ = dim;
  RationalMatrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  P.affine_ = row_echelon(diffs, dim);

  for (std::size_t i = 0; i < pts.size(); ++i) {
    // Lexicographic extremes are always vertices.
    if (i == 0 || i + 1 == pts.size()) {
      P.vertices_.push_back(pts[i]);
      continue;
    }
    std::vector<const RationalVec*> others;
    others.reserve(pts.size() - 1);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(&pts[j]);
    if (!in_convex_span(others, pts[i])) P.vertices_.push_back(pts[i]);
  }
  return P;
}

Membership contains(const Polytope& P, const RationalVec& q) {
  if (!P.in_affine_hull(q)) return Membership::OffAffineHull;
  LpResult r = interior_lp(P, q);
  if (r.status != LpStatus::Optimal) return Membership::Outside;
  return r.objective > 0 ? Membership::Interior : Membership::Boundary;
}

std::optional<RationalVec> interior_certificate(const Polytope& P, const RationalVec& q) {
  if (!P.in_affine_hull(q)) return std::nullopt;
  LpResult r = interior_lp(P, q);
  if (r.status != LpStatus::Optimal || r.objective <= 0) return std::nullopt;
  const std::size_t m = P.vertices().size();
  RationalVec lambda(m);
  for (std::size_t j = 0; j < m; ++j) lambda[j] = r.x[j] + r.x[m];
  return lambda;
}

Face exposed_face(const Polytope& P, const RationalVec& beta) {
  check_dim(beta, P.ambient_dim(), "exposed_face");
  Face f;
  f.selector = beta;
  Rational best;
  for (std::size_t i = 0; i < P.vertices().size(); ++i) {
    Rational h = dot(P.vertices()[i], beta);
    if (f.vertex_indices.empty() || h > best) {
      best = h;
      f.vertex_indices.assign(1, i);
    } else if (h == best) {
      f.vertex_indices.push_back(i);
    }
  }
  return f;
}

Polytope face_polytope(const Polytope& P, const Face& f) {
  std::vector<RationalVec> pts;
  for (auto i : f.vertex_indices) pts.push_back(P.vertices().at(i));
  return convex_hull(pts);
}

Rational support_function(const Polytope& P, const RationalVec& beta) {
  check_dim(beta, P.ambient_dim(), "support_function");
  Rational best = dot(P.vertices().front(), beta);
  for (const auto& v : P.vertices()) best = std::max(best, dot(v, beta));
  return best;
}

Polytope minkowski_sum(const std::vector<WeightedPolytope>& terms) {
  if (terms.empty()) throw InputError("minkowski_sum: empty term list");
  const std::size_t dim = terms.front().polytope.ambient_dim();
  for (const auto& t : terms) {
    if (t.weight <= 0) throw InputError("minkowski_sum: weights must be positive");
    if (t.polytope.ambient_dim() != dim) throw InputError("minkowski_sum: ambient dimension mismatch");
  }
  std::vector<RationalVec> acc;
  for (const auto& v : terms.front().polytope.vertices()) acc.push_back(terms.front().weight * v);
  Polytope sum = convex_hull(acc);
  for (std::size_t t = 1; t < terms.size(); ++t) {
    std::vector<RationalVec> next;
    for (const auto& a : sum.vertices())
      for (const auto& v : terms[t].polytope.vertices()) next.push_back(a + terms[t].weight * v);
    sum = convex_hull(next);
  }
  return sum;
}

std::vector<Face> facets(const Polytope& P) {
  const std::size_t d = P.dim();
  std::vector<Face> out;
  if (d == 0) return out;
  const auto& V = P.vertices();
  const auto& D = P.affine_basis();
  std::set<std::vector<std::size_t>> seen;

  for_each_subset(V.size(), d, [&](const std::vector<std::size_t>& S) {
    // Normal n = sum_r c_r D_r orthogonal to v_s - v_{S0} for s in S.
    RationalMatrix M;
    for (std::size_t s = 1; s < S.size(); ++s) {
      RationalVec diff = V[S[s]] - V[S[0]];
      RationalVec row(d);
      for (std::size_t r = 0; r < d; ++r) row[r] = dot(D[r], diff);
      M.push_back(std::move(row));
    }
    RationalMatrix ker = row_echelon(M, d).kernel();
    if (ker.size() != 1) return;  // S affinely dependent
    RationalVec n = zeros(P.ambient_dim());
    for (std::size_t r = 0; r < d; ++r) n = n + ker[0][r] * D[r];

    const Rational h = dot(n, V[S[0]]);
    bool any_above = false, any_below = false;
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < V.size(); ++i) {
      Rational val = dot(n, V[i]);
      if (val > h) any_above = true;
      else if (val < h) any_below = true;
      else on.push_back(i);
    }
    if (any_above && any_below) return;
    if (!seen.insert(on).second) return;
    if (any_above) n = Rational(-1) * n;
    out.push_back(Face{std::move(n), std::move(on)});
  });
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return a.vertex_indices < b.vertex_indices; });
  return out;
}

std::vector<Face> proper_faces(const Polytope& P) {
  std::vector<Face> fs = facets(P);
  std::set<std::vector<std::size_t>> sets;
  for (const auto& f : fs) sets.insert(f.vertex_indices);

  std::vector<std::vector<std::size_t>> frontier(sets.begin(), sets.end());
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> fresh;
    for (const auto& a : frontier) {
      for (const auto& f : fs) {
        std::vector<std::size_t> meet;
        std::set_intersection(a.begin(), a.end(), f.vertex_indices.begin(), f.vertex_indices.end(),
                              std::back_inserter(meet));
        if (!meet.empty() && sets.insert(meet).second) fresh.push_back(meet);
      }
    }
    frontier = std::move(fresh);
  }

  std::vector<Face> out;
  for (const auto& s : sets) {
    RationalVec sel = zeros(P.ambient_dim());
    for (const auto& f : fs) {
      if (std::includes(f.vertex_indices.begin(), f.vertex_indices.end(), s.begin(), s.end()))
        sel = sel + f.selector;
    }
    out.push_back(Face{std::move(sel), s});
  }
  std::stable_sort(out.begin(), out.end(), [&](const Face& a, const Face& b) {
    auto da = affine_rank(P.vertices(), a.vertex_indices);
    auto db = affine_rank(P.vertices(), b.vertex_indices);
    if (da != db) return da < db;
    return a.vertex_indices < b.vertex_indices;
  });
  return out;
}

}  // namespace tconv
