#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "subbary/errors.hpp"
#include "subbary/rational.hpp"

namespace subbary {

/// Linear functional used for slicing: either a coordinate projection or a
/// general rational vector. The vector form is never Euclid-normalized;
/// every downstream quantity is a ratio or lives on the functional's own
/// scale, so normalization would only add irrationality.
class Direction {
 public:
  static Direction coordinate(int axis);
  static Direction vector(RatVec v);  // throws DomainError on the zero vector

  bool is_coordinate() const { return axis_ >= 0; }
  int axis() const { return axis_; }
  Rat value(const RatVec& point) const;
  RatVec as_vector(int dim) const;

 private:
  Direction() = default;
  int axis_ = -1;
  RatVec vec_;
};

enum class Side { Ge, Le };

struct SliceSpec {
  Direction direction;
  Rat threshold;
  Side side = Side::Ge;
};

/// Half-space {x : normal . x <= offset} with coprime integer entries.
struct Facet {
  RatVec normal;
  Rat offset;
};

/// Full-dimensional polytope with exact rational vertices (V-rep) and a
/// derived facet list (H-rep). Immutable after construction: the hull
/// reduction, facet enumeration, triangulation, volume and barycenter are
/// all computed eagerly in build(), so sharing across threads is safe.
class ConvexBody {
 public:
  /// Convex-hull reduction of `points` in R^dim. Throws EmptyInput when
  /// fewer than dim+1 points are supplied and DegenerateBody when the
  /// affine hull is a proper subspace.
  static ConvexBody build(std::vector<RatVec> points, int dim);

  int dim() const { return dim_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const Rat& volume() const { return volume_; }
  const RatVec& barycenter() const { return barycenter_; }

  /// Exact (min, max) of the functional over the body.
  std::pair<Rat, Rat> support(const Direction& d) const;

  bool contains(const RatVec& x) const;

  ConvexBody translated(const RatVec& shift) const;

  /// One simplex of the star triangulation. Vertex indices refer to
  /// vertices(); the index equal to vertices().size() denotes the star
  /// point (the vertex centroid).
  struct Simplex {
    std::vector<int> verts;
    Rat volume;
  };

  const std::vector<Simplex>& triangulation() const { return simplices_; }
  const RatVec& star_point() const { return star_point_; }
  RatVec point_of(int index) const;

  /// Vertex index sets per facet, sorted; used by the triangulation and
  /// handy for tests.
  const std::vector<std::vector<int>>& facet_vertices() const {
    return facet_vertices_;
  }

 private:
  ConvexBody() = default;

  int dim_ = 0;
  std::vector<RatVec> vertices_;          // sorted lexicographically
  std::vector<Facet> facets_;
  std::vector<std::vector<int>> facet_vertices_;
  RatVec star_point_;
  std::vector<Simplex> simplices_;
  Rat volume_;
  RatVec barycenter_;
};

/// Exact intersection with the half-space described by `spec`. Returns
/// nullopt when the intersection has zero volume (t at or beyond the
/// support); never throws for thresholds inside the support.
std::optional<ConvexBody> clip(const ConvexBody& body, const SliceSpec& spec);

/// barycenter(clip(body, spec)); throws EmptySlice on a zero-volume slice.
RatVec sub_barycenter(const ConvexBody& body, const SliceSpec& spec);

/// The unique t with vol(body ∩ {p >= t}) = tau * vol(body), found by
/// bisection with exact volume evaluation at every probe; the bracket is
/// shrunk to 1e-12 times the support oscillation. tau=0 gives max p,
/// tau=1 gives min p. Builds a fresh cumulative-volume cache per call;
/// use MomentCurve directly when evaluating many quantiles of one body.
double quantile_threshold(const ConvexBody& body, const Direction& d,
                          double tau);

struct McEstimate {
  double estimate = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
};

/// Hit-or-miss Monte Carlo volume over the bounding box, with membership
/// tested against the facet list. Independent of the exact kernel's
/// triangulation path.
McEstimate mc_volume_oracle(const ConvexBody& body, std::uint64_t samples,
                            std::uint64_t seed);

}  // namespace subbary
