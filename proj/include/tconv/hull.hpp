#pragma once

#include <optional>
#include <vector>

#include "tconv/rational.hpp"

namespace tconv {

/**
 * Exact convex polytope given by its irredundant vertex list.
 *
 * Vertices are kept in lexicographic order, so two polytopes are equal iff
 * their vertex lists are equal. The affine hull is `base_point() +
 * span(affine_basis())`; the basis is in reduced row echelon form and is
 * therefore canonical for the direction space. The ambient dimension is
 * never reduced for degenerate inputs.
 */
class Polytope {
 public:
  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<RationalVec>& vertices() const { return vertices_; }
  const RationalMatrix& affine_basis() const { return affine_.rows; }
  const RationalVec& base_point() const { return vertices_.front(); }

  /// Dimension of the affine hull.
  std::size_t dim() const { return affine_.rank(); }

  /// Exact test for `q - base_point()` lying in the direction space.
  bool in_affine_hull(const RationalVec& q) const;
  const RowEchelon& direction_space() const { return affine_; }

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.vertices_ == b.vertices_;
  }

 private:
  friend Polytope convex_hull(const std::vector<RationalVec>& points);

  std::size_t ambient_dim_ = 0;
  std::vector<RationalVec> vertices_;
  RowEchelon affine_;
};

enum class Membership { Interior, Boundary, Outside, OffAffineHull };

const char* to_string(Membership m);

/// Face of a polytope exposed by a linear functional.
struct Face {
  RationalVec selector;
  std::vector<std::size_t> vertex_indices;  // into the parent's vertex list, ascending
};

/// Irredundant hull by exact LP redundancy elimination. Throws InputError on empty input or ragged dimensions.
Polytope convex_hull(const std::vector<RationalVec>& points);

/// Classification relative to the polytope's own affine hull (relative interior / relative boundary).
Membership contains(const Polytope& P, const RationalVec& q);

/**
 * Strictly positive convex coefficients over all vertices reproducing `q`,
 * when `q` is in the relative interior; empty otherwise.
 */
std::optional<RationalVec> interior_certificate(const Polytope& P, const RationalVec& q);

/// Vertices maximizing <., beta>. beta = 0 selects every vertex.
Face exposed_face(const Polytope& P, const RationalVec& beta);

Polytope face_polytope(const Polytope& P, const Face& f);

/// max over P of <., beta>.
Rational support_function(const Polytope& P, const RationalVec& beta);

struct WeightedPolytope {
  Rational weight;
  Polytope polytope;
};

/// Exact weighted Minkowski sum. Weights must be positive.
Polytope minkowski_sum(const std::vector<WeightedPolytope>& terms);

/**
 * Every nonempty proper face of P, each with an exposing selector.
 *
 * Facets come from exact hyperplanes through affinely independent vertex
 * subsets inside the affine hull; lower faces are intersections of facets and
 * are exposed by the sum of the normals of the facets containing them.
 * Ordered by face dimension (vertices first), then by vertex indices.
 */
std::vector<Face> proper_faces(const Polytope& P);

/// Facets only (faces of dimension dim(P) - 1), with outward normals in the direction space.
std::vector<Face> facets(const Polytope& P);

}  // namespace tconv
