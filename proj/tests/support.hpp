#pragma once

// Shared fixtures and brute-force oracles for the test binaries. The oracles
// deliberately avoid the library's LP/hull code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <initializer_list>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tconv/hull.hpp"
#include "tconv/rational.hpp"
#include "tconv/weights.hpp"

namespace testsupport {

using tconv::ProjPoint;
using tconv::Rational;
using tconv::RationalVec;
using tconv::WeightSystem;
using tconv::operator+;
using tconv::operator-;
using tconv::operator*;

inline RationalVec q(std::initializer_list<const char*> entries) {
  RationalVec v;
  for (const char* e : entries) v.push_back(tconv::parse_rational(e));
  return v;
}

inline RationalVec qi(std::initializer_list<long> entries) {
  RationalVec v;
  for (long e : entries) v.push_back(Rational(e));
  return v;
}

inline WeightSystem system_from(std::size_t k, const std::vector<std::vector<long>>& w) {
  std::vector<RationalVec> ws;
  for (const auto& row : w) {
    RationalVec r;
    for (long e : row) r.push_back(Rational(e));
    ws.push_back(r);
  }
  return WeightSystem(k, ws);
}

/// alpha = {0, e_1, ..., e_k} acting on P^k.
inline WeightSystem unit_simplex(std::size_t k) {
  std::vector<std::vector<long>> w(k + 1, std::vector<long>(k, 0));
  for (std::size_t i = 0; i < k; ++i) w[i + 1][i] = 1;
  return system_from(k, w);
}

inline ProjPoint real_point(const std::vector<double>& re) {
  std::vector<std::complex<double>> z;
  for (double r : re) z.emplace_back(r, 0.0);
  return ProjPoint::from_coords(z);
}

inline std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

/// Random weight system with k <= 3, n + 1 <= 9, half-integer weights in [-2, 2].
inline WeightSystem random_system(std::mt19937_64& rng, std::size_t k, std::size_t n_plus_1) {
  std::uniform_int_distribution<int> d(-4, 4);
  std::vector<RationalVec> ws;
  for (std::size_t i = 0; i < n_plus_1; ++i) {
    RationalVec w;
    for (std::size_t j = 0; j < k; ++j) w.push_back(tconv::ratio(d(rng), 2));
    ws.push_back(w);
  }
  return WeightSystem(k, ws);
}

/// Random support subset of {0..n}, nonempty.
inline std::vector<std::size_t> random_support(std::mt19937_64& rng, std::size_t n_plus_1) {
  std::bernoulli_distribution keep(0.6);
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < n_plus_1; ++i)
    if (keep(rng)) s.push_back(i);
  if (s.empty()) s.push_back(std::uniform_int_distribution<std::size_t>(0, n_plus_1 - 1)(rng));
  return s;
}

// ---------------------------------------------------------------------------
// Hull oracle, exact and LP-free, for ambient dimension <= 3. Points are scaled
// to integers by the common denominator. 1D: extremes. 2D: Andrew's monotone
// chain with strict turns. 3D: enumerate supporting planes through point
// triples; a point is a vertex iff the normals of the supporting planes through
// it have rank 3. Coplanar 3D input is projected to a coordinate plane.

inline std::vector<RationalVec> dedup(std::vector<RationalVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline void for_each_direction(std::size_t k, int range, const std::function<void(const RationalVec&)>& f) {
  RationalVec d(k, Rational(-range));
  while (true) {
    if (!tconv::is_zero(d)) f(d);
    std::size_t i = 0;
    while (i < k && d[i] == range) d[i++] = -range;
    if (i == k) return;
    d[i] += 1;
  }
}

namespace oracle_detail {

using I = __int128;
using IVec = std::vector<I>;

inline std::vector<IVec> to_integer(const std::vector<RationalVec>& pts) {
  mpz_class l = 1;
  for (const auto& p : pts)
    for (const auto& e : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
  std::vector<IVec> out;
  for (const auto& p : pts) {
    IVec v;
    for (const auto& e : p) {
      const mpz_class n = e.get_num() * (l / e.get_den());
      v.push_back(static_cast<I>(n.get_si()));
    }
    out.push_back(v);
  }
  return out;
}

inline I cross2(const IVec& o, const IVec& a, const IVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// indices (into sorted-unique pts) of the 2D hull vertices
inline std::vector<std::size_t> chain2(const std::vector<IVec>& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  if (n < 3) return idx;
  std::vector<std::size_t> h(2 * n);
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (m >= 2 && cross2(p[h[m - 2]], p[h[m - 1]], p[idx[i]]) <= 0) --m;
    h[m++] = idx[i];
  }
  for (std::size_t i = n - 1, lo = m + 1; i-- > 0;) {
    while (m >= lo && cross2(p[h[m - 2]], p[h[m - 1]], p[idx[i]]) <= 0) --m;
    h[m++] = idx[i];
  }
  h.resize(m - 1);
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return h;
}

inline IVec sub(const IVec& a, const IVec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline IVec cross3(const IVec& a, const IVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline I dot3(const IVec& a, const IVec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline bool zero3(const IVec& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

inline int rank3(const std::vector<IVec>& ns) {
  if (ns.empty()) return 0;
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (std::size_t j = i + 1; j < ns.size(); ++j) {
      const IVec c = cross3(ns[i], ns[j]);
      if (zero3(c)) continue;
      for (std::size_t l = j + 1; l < ns.size(); ++l)
        if (dot3(c, ns[l]) != 0) return 3;
      return 2;
    }
  return 1;
}

}  // namespace oracle_detail

inline std::vector<RationalVec> brute_force_vertices(const std::vector<RationalVec>& points) {
  using namespace oracle_detail;
  const auto pts = dedup(points);
  const std::size_t n = pts.size(), k = pts.front().size();
  if (n <= 2) return pts;
  const auto p = to_integer(pts);
  std::vector<std::size_t> keep;
  if (k == 1) {
    keep = {0, n - 1};
  } else if (k == 2) {
    keep = chain2(p);
  } else if (k == 3) {
    // affine dimension: look for a non-collinear triple and an off-plane point
    IVec normal;
    for (std::size_t j = 1; j < n && normal.empty(); ++j)
      for (std::size_t l = j + 1; l < n && normal.empty(); ++l) {
        const IVec c = cross3(sub(p[j], p[0]), sub(p[l], p[0]));
        if (!zero3(c)) normal = c;
      }
    bool flat = true;
    if (!normal.empty())
      for (std::size_t i = 0; i < n && flat; ++i) flat = dot3(normal, sub(p[i], p[0])) == 0;
    if (flat) {
      // drop a coordinate along which the plane (or line) projects injectively
      std::size_t drop = 0;
      if (!normal.empty()) {
        while (normal[drop] == 0) ++drop;
      } else {
        const IVec d = sub(p[n - 1], p[0]);
        // a line: keep a coordinate where it moves, drop another
        std::size_t move = 0;
        while (d[move] == 0) ++move;
        drop = (move + 1) % 3;
      }
      std::vector<IVec> q;
      for (const auto& v : p) {
        IVec w;
        for (std::size_t c = 0; c < 3; ++c)
          if (c != drop) w.push_back(v[c]);
        q.push_back(w);
      }
      keep = chain2(q);
    } else {
      std::vector<std::vector<IVec>> normals(n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          for (std::size_t c = b + 1; c < n; ++c) {
            IVec nv = cross3(sub(p[b], p[a]), sub(p[c], p[a]));
            if (zero3(nv)) continue;
            bool pos = false, neg = false;
            std::vector<std::size_t> on;
            for (std::size_t i = 0; i < n; ++i) {
              const I s = dot3(nv, sub(p[i], p[a]));
              if (s > 0) pos = true;
              else if (s < 0) neg = true;
              else on.push_back(i);
            }
            if (pos && neg) continue;
            for (auto i : on) normals[i].push_back(nv);
          }
      for (std::size_t i = 0; i < n; ++i)
        if (rank3(normals[i]) == 3) keep.push_back(i);
    }
  } else {
    throw std::invalid_argument("brute_force_vertices: ambient dimension above 3");
  }
  std::vector<RationalVec> out;
  for (auto i : keep) out.push_back(pts[i]);
  return dedup(out);
}

/// Vertex-sum enumeration for weighted Minkowski sums, pruned to vertices after each term.
inline std::vector<RationalVec> brute_force_minkowski(const std::vector<Rational>& weights,
                                                      const std::vector<std::vector<RationalVec>>& vertex_sets) {
  std::vector<RationalVec> sums{RationalVec(vertex_sets.front().front().size(), Rational(0))};
  for (std::size_t j = 0; j < vertex_sets.size(); ++j) {
    std::vector<RationalVec> next;
    for (const auto& s : sums)
      for (const auto& v : vertex_sets[j]) next.push_back(s + weights[j] * v);
    sums = brute_force_vertices(next);
  }
  return sums;
}

// ---------------------------------------------------------------------------
// Direct numerical flow in long double: coordinates of exp(t beta) x with the
// largest set to 1. Indices whose modulus stays above `floor` form the
// numerically observed limit support.

inline std::vector<std::size_t> numeric_flow_support(const WeightSystem& W, const ProjPoint& x,
                                                     const std::vector<long>& beta, long double t,
                                                     long double floor = 1e-8L) {
  std::vector<long double> logm(x.size(), -INFINITY);
  long double top = -INFINITY;
  for (auto i : x.support()) {
    long double pair = 0;
    for (std::size_t j = 0; j < beta.size(); ++j) pair += W.weight(i)[j].get_d() * beta[j];
    logm[i] = x.log_modulus()[i] + t * pair;
    top = std::max(top, logm[i]);
  }
  std::vector<std::size_t> supp;
  for (auto i : x.support())
    if (std::exp(logm[i] - top) > floor) supp.push_back(i);
  return supp;
}

}  // namespace testsupport
