#include "subbary/convex_body.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <utility>

#include "subbary/linalg.hpp"
#include "subbary/moment_curve.hpp"

namespace subbary {

// ---------------------------------------------------------------------------
// Direction

Direction Direction::coordinate(int axis) {
  if (axis < 0) throw DomainError("coordinate axis must be nonnegative");
  Direction d;
  d.axis_ = axis;
  return d;
}

Direction Direction::vector(RatVec v) {
  bool nonzero = false;
  for (const auto& c : v) nonzero = nonzero || c != 0;
  if (!nonzero) throw DomainError("direction vector must be nonzero");
  Direction d;
  d.vec_ = std::move(v);
  return d;
}

Rat Direction::value(const RatVec& point) const {
  if (axis_ >= 0) {
    if (static_cast<std::size_t>(axis_) >= point.size()) {
      throw DomainError("direction axis exceeds point dimension");
    }
    return point[static_cast<std::size_t>(axis_)];
  }
  if (vec_.size() != point.size()) {
    throw DomainError("direction/point dimension mismatch");
  }
  return dot(vec_, point);
}

RatVec Direction::as_vector(int dim) const {
  if (axis_ >= 0) {
    if (axis_ >= dim) throw DomainError("direction axis exceeds dimension");
    RatVec v(static_cast<std::size_t>(dim), Rat(0));
    v[static_cast<std::size_t>(axis_)] = 1;
    return v;
  }
  if (static_cast<int>(vec_.size()) != dim) {
    throw DomainError("direction/dimension mismatch");
  }
  return vec_;
}

// ---------------------------------------------------------------------------
// Facet enumeration via the double description method on the polar cone.
//
// Points are lifted to rays (1, v) in R^{n+1}; the facets of conv(points)
// are exactly the extreme rays of the polar cone
//   D = { y : <(1, v_i), y> >= 0 for all i },
// which the double description method enumerates incrementally with exact
// arithmetic. Degenerate (non-simplicial) facets and redundant input
// points need no special treatment.

namespace {

struct Bits {
  std::vector<std::uint64_t> w;

  explicit Bits(std::size_t nbits) : w((nbits + 63) / 64, 0) {}

  void set(std::size_t i) { w[i >> 6] |= (std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }

  static Bits intersect(const Bits& a, const Bits& b) {
    Bits r(a.w.size() * 64);
    for (std::size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
    return r;
  }

  // this ⊇ sub
  bool contains(const Bits& sub) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if ((sub.w[i] & ~w[i]) != 0) return false;
    }
    return true;
  }
};

// Scales a rational vector to coprime integer entries, preserving sign.
void canonicalize_ray(RatVec& y) {
  BigInt scale = 1;
  for (const auto& q : y) scale = lcm(scale, denominator(q));
  std::vector<BigInt> ints(y.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ints[i] = numerator(y[i]) * (scale / denominator(y[i]));
    g = gcd(g, ints[i]);
  }
  if (g == 0) throw std::logic_error("zero ray in double description");
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = Rat(ints[i] / g, BigInt(1));
}

struct Ray {
  RatVec y;
  Bits zero;
};

std::vector<RatVec> polar_extreme_rays(const std::vector<RatVec>& pts, int n) {
  const std::size_t count = pts.size();
  const int lifted_dim = n + 1;

  auto lifted = [&](std::size_t i) {
    RatVec m(static_cast<std::size_t>(lifted_dim));
    m[0] = 1;
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(1 + j)] = pts[i][static_cast<std::size_t>(j)];
    return m;
  };

  // Greedy affinely independent subset; its lifted rows are invertible.
  std::vector<std::size_t> basis;
  std::vector<RatVec> rows;
  for (std::size_t i = 0; i < count && static_cast<int>(basis.size()) < lifted_dim; ++i) {
    rows.push_back(lifted(i));
    if (rank(rows) == static_cast<int>(rows.size())) {
      basis.push_back(i);
    } else {
      rows.pop_back();
    }
  }
  if (static_cast<int>(basis.size()) < lifted_dim) {
    throw DegenerateBody("affine hull is not full-dimensional");
  }

  // Initial simplicial cone: rays are the columns of the inverse basis
  // matrix, so <m_basis[i], ray_j> = delta_ij.
  std::vector<Ray> rays;
  for (int j = 0; j < lifted_dim; ++j) {
    RatVec unit(static_cast<std::size_t>(lifted_dim), Rat(0));
    unit[static_cast<std::size_t>(j)] = 1;
    RatVec col;
    if (!solve(rows, unit, col)) {
      throw std::logic_error("basis matrix not invertible");
    }
    canonicalize_ray(col);
    Ray r{std::move(col), Bits(count)};
    for (int i = 0; i < lifted_dim; ++i) {
      if (i != j) r.zero.set(basis[static_cast<std::size_t>(i)]);
    }
    rays.push_back(std::move(r));
  }

  std::vector<char> in_basis(count, 0);
  for (auto b : basis) in_basis[b] = 1;

  for (std::size_t c = 0; c < count; ++c) {
    if (in_basis[c]) continue;
    const RatVec m = lifted(c);

    std::vector<Rat> val(rays.size());
    std::vector<std::size_t> pos, zer, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(m, rays[r].y);
      if (val[r] > 0) {
        pos.push_back(r);
      } else if (val[r] < 0) {
        neg.push_back(r);
      } else {
        zer.push_back(r);
      }
    }

    if (neg.empty()) {
      for (auto r : zer) rays[r].zero.set(c);
      continue;
    }

    std::vector<Ray> created;
    for (auto p : pos) {
      for (auto q : neg) {
        Bits common = Bits::intersect(rays[p].zero, rays[q].zero);
        if (common.count() < lifted_dim - 2) continue;
        // Combinatorial adjacency: no third extreme ray may be tight on
        // everything the pair shares.
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (rays[r].zero.contains(common)) adjacent = false;
        }
        if (!adjacent) continue;

        RatVec y(m.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
          y[i] = val[p] * rays[q].y[i] - val[q] * rays[p].y[i];
        }
        canonicalize_ray(y);
        common.set(c);
        created.push_back(Ray{std::move(y), std::move(common)});
      }
    }

    std::vector<Ray> next;
    next.reserve(pos.size() + zer.size() + created.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (val[r] > 0) {
        next.push_back(std::move(rays[r]));
      } else if (val[r] == 0) {
        rays[r].zero.set(c);
        next.push_back(std::move(rays[r]));
      }
    }
    for (auto& r : created) next.push_back(std::move(r));
    rays = std::move(next);
  }

  std::vector<RatVec> result;
  result.reserve(rays.size());
  for (auto& r : rays) result.push_back(std::move(r.y));
  return result;
}

bool lex_less(const RatVec& a, const RatVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// Recursive fan triangulation of a face given by its sorted vertex ids.
// Subfaces are recovered as intersections with the body's facets; the fan
// apex is the face's lexicographically smallest vertex.
class FaceTriangulator {
 public:
  FaceTriangulator(const std::vector<RatVec>& vertices,
                   const std::vector<std::vector<int>>& facet_vertices)
      : vertices_(vertices), facet_vertices_(facet_vertices) {}

  const std::vector<std::vector<int>>& fan(const std::vector<int>& face, int k) {
    auto it = memo_.find(face);
    if (it != memo_.end()) return it->second;

    std::vector<std::vector<int>> out;
    if (face.size() == static_cast<std::size_t>(k) + 1) {
      out.push_back(face);
    } else {
      const int apex = face.front();
      std::set<std::vector<int>> subfaces;
      for (const auto& fv : facet_vertices_) {
        std::vector<int> common;
        std::set_intersection(face.begin(), face.end(), fv.begin(), fv.end(),
                              std::back_inserter(common));
        if (common.size() == face.size()) continue;  // face lies inside facet
        if (common.size() < static_cast<std::size_t>(k)) continue;
        if (face_rank(common) != k - 1) continue;
        subfaces.insert(std::move(common));
      }
      for (const auto& sub : subfaces) {
        if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
        for (const auto& piece : fan(sub, k - 1)) {
          std::vector<int> simplex;
          simplex.reserve(piece.size() + 1);
          simplex.push_back(apex);
          simplex.insert(simplex.end(), piece.begin(), piece.end());
          out.push_back(std::move(simplex));
        }
      }
      if (out.empty()) {
        throw std::logic_error("face triangulation produced no simplices");
      }
    }
    return memo_.emplace(face, std::move(out)).first->second;
  }

 private:
  int face_rank(const std::vector<int>& ids) const {
    std::vector<RatVec> pts;
    pts.reserve(ids.size());
    for (int id : ids) pts.push_back(vertices_[static_cast<std::size_t>(id)]);
    return affine_rank(pts);
  }

  const std::vector<RatVec>& vertices_;
  const std::vector<std::vector<int>>& facet_vertices_;
  std::map<std::vector<int>, std::vector<std::vector<int>>> memo_;
};

}  // namespace

// ---------------------------------------------------------------------------
// ConvexBody

ConvexBody ConvexBody::build(std::vector<RatVec> points, int dim) {
  if (dim < 1) throw DomainError("dimension must be at least 1");
  if (points.empty()) throw EmptyInput("no points supplied");
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim) {
      throw DomainError("point dimension mismatch");
    }
  }
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < static_cast<std::size_t>(dim) + 1) {
    throw DegenerateBody("need at least n+1 distinct points");
  }

  ConvexBody body;
  body.dim_ = dim;

  const auto rays = polar_extreme_rays(points, dim);

  // Ray (y0, a') encodes y0 + a'·x >= 0 on the body, i.e. (-a')·x <= y0.
  std::vector<Facet> facets;
  facets.reserve(rays.size());
  for (const auto& y : rays) {
    Facet f;
    f.offset = y[0];
    f.normal.resize(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) {
      f.normal[static_cast<std::size_t>(j)] = -y[static_cast<std::size_t>(1 + j)];
    }
    facets.push_back(std::move(f));
  }

  // A point is a vertex iff its tight facet normals span R^n.
  std::vector<RatVec> vertices;
  for (const auto& p : points) {
    std::vector<RatVec> tight;
    for (const auto& f : facets) {
      if (dot(f.normal, p) == f.offset) tight.push_back(f.normal);
    }
    if (static_cast<int>(tight.size()) >= dim && rank(tight) == dim) {
      vertices.push_back(p);
    }
  }
  if (vertices.size() < static_cast<std::size_t>(dim) + 1) {
    throw std::logic_error("hull reduction kept fewer than n+1 vertices");
  }
  body.vertices_ = std::move(vertices);  // already lex-sorted

  std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) {
    if (a.normal != b.normal) return lex_less(a.normal, b.normal);
    return a.offset < b.offset;
  });
  body.facets_ = std::move(facets);

  body.facet_vertices_.resize(body.facets_.size());
  for (std::size_t f = 0; f < body.facets_.size(); ++f) {
    for (std::size_t v = 0; v < body.vertices_.size(); ++v) {
      if (dot(body.facets_[f].normal, body.vertices_[v]) == body.facets_[f].offset) {
        body.facet_vertices_[f].push_back(static_cast<int>(v));
      }
    }
    if (static_cast<int>(body.facet_vertices_[f].size()) < dim) {
      throw std::logic_error("facet with too few vertices");
    }
  }

  // Star triangulation from the vertex centroid over fan-triangulated
  // facets; volume and barycenter come from the same decomposition.
  RatVec star(static_cast<std::size_t>(dim), Rat(0));
  for (const auto& v : body.vertices_) {
    for (int j = 0; j < dim; ++j) star[static_cast<std::size_t>(j)] += v[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < dim; ++j) {
    star[static_cast<std::size_t>(j)] /= Rat(static_cast<int>(body.vertices_.size()));
  }
  body.star_point_ = std::move(star);

  FaceTriangulator tri(body.vertices_, body.facet_vertices_);
  const int star_id = static_cast<int>(body.vertices_.size());

  Rat total_volume = 0;
  RatVec weighted_centroid(static_cast<std::size_t>(dim), Rat(0));
  BigInt factorial = 1;
  for (int j = 2; j <= dim; ++j) factorial *= j;

  for (const auto& fv : body.facet_vertices_) {
    for (const auto& base : tri.fan(fv, dim - 1)) {
      std::vector<int> ids;
      ids.reserve(base.size() + 1);
      ids.push_back(star_id);
      ids.insert(ids.end(), base.begin(), base.end());

      std::vector<RatVec> edges;
      edges.reserve(base.size());
      for (int id : base) {
        RatVec e(static_cast<std::size_t>(dim));
        const RatVec& p = body.vertices_[static_cast<std::size_t>(id)];
        for (int j = 0; j < dim; ++j) {
          e[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j)] - body.star_point_[static_cast<std::size_t>(j)];
        }
        edges.push_back(std::move(e));
      }
      Rat vol = abs(det(std::move(edges))) / Rat(factorial, BigInt(1));
      if (vol == 0) throw std::logic_error("degenerate simplex in triangulation");

      for (int j = 0; j < dim; ++j) {
        Rat coord = body.star_point_[static_cast<std::size_t>(j)];
        for (int id : base) coord += body.vertices_[static_cast<std::size_t>(id)][static_cast<std::size_t>(j)];
        weighted_centroid[static_cast<std::size_t>(j)] += vol * coord / Rat(dim + 1);
      }
      total_volume += vol;
      body.simplices_.push_back(Simplex{std::move(ids), std::move(vol)});
    }
  }

  if (total_volume <= 0) throw std::logic_error("nonpositive hull volume");
  body.volume_ = std::move(total_volume);
  for (int j = 0; j < dim; ++j) {
    weighted_centroid[static_cast<std::size_t>(j)] /= body.volume_;
  }
  body.barycenter_ = std::move(weighted_centroid);
  return body;
}

std::pair<Rat, Rat> ConvexBody::support(const Direction& d) const {
  Rat lo = d.value(vertices_.front());
  Rat hi = lo;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    Rat v = d.value(vertices_[i]);
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return {lo, hi};
}

bool ConvexBody::contains(const RatVec& x) const {
  for (const auto& f : facets_) {
    if (dot(f.normal, x) > f.offset) return false;
  }
  return true;
}

ConvexBody ConvexBody::translated(const RatVec& shift) const {
  if (shift.size() != static_cast<std::size_t>(dim_)) {
    throw DomainError("translation dimension mismatch");
  }
  std::vector<RatVec> pts = vertices_;
  for (auto& p : pts) {
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += shift[j];
  }
  return build(std::move(pts), dim_);
}

RatVec ConvexBody::point_of(int index) const {
  if (index == static_cast<int>(vertices_.size())) return star_point_;
  return vertices_[static_cast<std::size_t>(index)];
}

// ---------------------------------------------------------------------------
// Slicing

std::optional<ConvexBody> clip(const ConvexBody& body, const SliceSpec& spec) {
  const auto& vs = body.vertices();
  const int sign = spec.side == Side::Ge ? 1 : -1;

  std::vector<Rat> gap(vs.size());  // sign * (p(v) - t); keep when >= 0
  std::vector<std::size_t> kept, dropped;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    gap[i] = Rat(sign) * (spec.direction.value(vs[i]) - spec.threshold);
    if (gap[i] >= 0) {
      kept.push_back(i);
    } else {
      dropped.push_back(i);
    }
  }
  if (kept.empty()) return std::nullopt;
  if (dropped.empty()) return body;

  std::vector<RatVec> candidates;
  candidates.reserve(kept.size() + kept.size() * dropped.size());
  for (auto i : kept) candidates.push_back(vs[i]);
  for (auto i : kept) {
    if (gap[i] == 0) continue;
    for (auto j : dropped) {
      // crossing point of edge candidate [v_i, v_j] with {p = t}
      const Rat lambda = gap[i] / (gap[i] - gap[j]);
      RatVec w(vs[i].size());
      for (std::size_t c = 0; c < w.size(); ++c) {
        w[c] = vs[i][c] + lambda * (vs[j][c] - vs[i][c]);
      }
      candidates.push_back(std::move(w));
    }
  }

  try {
    return ConvexBody::build(std::move(candidates), body.dim());
  } catch (const DegenerateBody&) {
    return std::nullopt;  // zero-volume face at a support endpoint
  }
}

RatVec sub_barycenter(const ConvexBody& body, const SliceSpec& spec) {
  auto slice = clip(body, spec);
  if (!slice) throw EmptySlice("slice has zero volume");
  return slice->barycenter();
}

double quantile_threshold(const ConvexBody& body, const Direction& d,
                          double tau) {
  return MomentCurve(body, d).quantile(tau);
}

// ---------------------------------------------------------------------------
// Monte Carlo oracle

McEstimate mc_volume_oracle(const ConvexBody& body, std::uint64_t samples,
                            std::uint64_t seed) {
  const int n = body.dim();
  std::vector<double> lo(static_cast<std::size_t>(n));
  std::vector<double> hi(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    auto [a, b] = body.support(Direction::coordinate(j));
    lo[static_cast<std::size_t>(j)] = to_double(a);
    hi[static_cast<std::size_t>(j)] = to_double(b);
  }

  std::vector<std::vector<double>> normals;
  std::vector<double> offsets;
  for (const auto& f : body.facets()) {
    std::vector<double> a(static_cast<std::size_t>(n));
    double scale = 0;
    for (int j = 0; j < n; ++j) {
      a[static_cast<std::size_t>(j)] = to_double(f.normal[static_cast<std::size_t>(j)]);
      scale = std::max(scale, std::fabs(a[static_cast<std::size_t>(j)]));
    }
    double b = to_double(f.offset);
    for (auto& c : a) c /= scale;
    normals.push_back(std::move(a));
    offsets.push_back(b / scale);
  }

  std::mt19937_64 gen(seed);
  auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

  std::uint64_t hits = 0;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int j = 0; j < n; ++j) {
      x[static_cast<std::size_t>(j)] =
          lo[static_cast<std::size_t>(j)] +
          unit() * (hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)]);
    }
    bool inside = true;
    for (std::size_t f = 0; f < normals.size() && inside; ++f) {
      double v = 0;
      for (int j = 0; j < n; ++j) {
        v += normals[f][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
      }
      inside = v <= offsets[f];
    }
    if (inside) ++hits;
  }

  double box = 1;
  for (int j = 0; j < n; ++j) {
    box *= hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)];
  }
  const double p = samples == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples);
  McEstimate est;
  est.samples = samples;
  est.estimate = box * p;
  est.std_error = samples == 0 ? 0.0 : box * std::sqrt(p * (1 - p) / static_cast<double>(samples));
  return est;
}

}  // namespace subbary
