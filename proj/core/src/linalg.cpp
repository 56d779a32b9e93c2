#include "subbary/linalg.hpp"

#include <cstddef>
#include <stdexcept>

namespace subbary {

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// Row-echelon elimination; returns the rank and leaves `rows` reduced.
int eliminate(std::vector<RatVec>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rat factor = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) {
        rows[i][j] -= factor * rows[r][j];
      }
    }
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace

int rank(std::vector<RatVec> rows) { return eliminate(rows); }

Rat det(std::vector<RatVec> rows) {
  const std::size_t n = rows.size();
  Rat result = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && rows[pivot][c] == 0) ++pivot;
    if (pivot == n) return Rat(0);
    if (pivot != c) {
      std::swap(rows[c], rows[pivot]);
      result = -result;
    }
    result *= rows[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (rows[i][c] == 0) continue;
      const Rat factor = rows[i][c] / rows[c][c];
      for (std::size_t j = c; j < n; ++j) {
        rows[i][j] -= factor * rows[c][j];
      }
    }
  }
  return result;
}

bool solve(std::vector<RatVec> a, RatVec b, RatVec& x) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(a[c], a[pivot]);
    std::swap(b[c], b[pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rat factor = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= factor * a[c][j];
      b[i] -= factor * b[c];
    }
  }
  x.assign(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

int affine_rank(const std::vector<RatVec>& points) {
  if (points.empty()) return -1;
  std::vector<RatVec> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    RatVec d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return eliminate(diffs);
}

}  // namespace subbary
