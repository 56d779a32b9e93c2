#pragma once

#include <initializer_list>
#include <vector>

#include "subbary/convex_body.hpp"
#include "subbary/rational.hpp"

namespace subbary::testing {

inline ConvexBody body2(std::initializer_list<std::pair<Rat, Rat>> pts) {
  std::vector<RatVec> points;
  for (const auto& [x, y] : pts) points.push_back({x, y});
  return ConvexBody::build(std::move(points), 2);
}

inline ConvexBody unit_square() {
  return body2({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
}

inline ConvexBody corner_triangle() {
  return body2({{0, 0}, {1, 0}, {0, 1}});
}

// the quadrilateral with widths 2t on [0,1] and 3-t on [1,3]
inline ConvexBody eckardt_quadrilateral() {
  return body2({{0, 0}, {1, 1}, {3, 0}, {1, -1}});
}

inline ConvexBody unit_cube(int n) {
  std::vector<RatVec> pts;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    RatVec p(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(j)] = (mask >> j) & 1 ? 1 : 0;
    pts.push_back(std::move(p));
  }
  return ConvexBody::build(std::move(pts), n);
}

inline ConvexBody standard_simplex(int n) {
  std::vector<RatVec> pts(1, RatVec(static_cast<std::size_t>(n), Rat(0)));
  for (int j = 0; j < n; ++j) {
    RatVec e(static_cast<std::size_t>(n), Rat(0));
    e[static_cast<std::size_t>(j)] = 1;
    pts.push_back(std::move(e));
  }
  return ConvexBody::build(std::move(pts), n);
}

}  // namespace subbary::testing
