#pragma once

#include <vector>

#include "subbary/rational.hpp"

namespace subbary {

// Dense exact linear algebra for the small dimensions (n <= 8) the
// geometry kernel works in. Plain Gaussian elimination; pivots are exact
// so no pivoting strategy is needed beyond nonzero selection.

Rat dot(const RatVec& a, const RatVec& b);

// Rank of the row span. Consumes the rows by value.
int rank(std::vector<RatVec> rows);

// Determinant of a square matrix given as rows.
Rat det(std::vector<RatVec> rows);

// Solves a*x = b for square a; returns false if singular.
bool solve(std::vector<RatVec> a, RatVec b, RatVec& x);

// Dimension of the affine hull of a point set (0 for a single point).
int affine_rank(const std::vector<RatVec>& points);

}  // namespace subbary
