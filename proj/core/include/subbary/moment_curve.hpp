#pragma once

#include <vector>

#include "subbary/convex_body.hpp"
#include "subbary/rational.hpp"

namespace subbary {

/// Piecewise polynomial with rational coefficients; piece i is the
/// monomial-basis polynomial on [breaks[i], breaks[i+1]).
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<Rat> breaks, std::vector<std::vector<Rat>> pieces);

  const std::vector<Rat>& breaks() const { return breaks_; }
  const std::vector<std::vector<Rat>>& pieces() const { return pieces_; }

  /// Evaluates the piece containing t; t outside the break range evaluates
  /// the boundary piece's polynomial.
  Rat eval(const Rat& t) const;

 private:
  std::vector<Rat> breaks_;
  std::vector<std::vector<Rat>> pieces_;
};

/// Exact cumulative slice data of a body along one direction:
///
///   volume_below(t) = vol(K ∩ {p <= t})
///   moment_below(t) = ∫_{K ∩ {p <= t}} p(x) dx
///
/// Both are piecewise polynomials in t (degree <= n and n+1). They are
/// assembled per triangulation simplex: the pushforward of the uniform
/// measure on a simplex under a linear functional is the B-spline with the
/// simplex's vertex values as knots, so each simplex contributes the
/// exact integral of a Cox–de Boor spline. Construction cross-checks the
/// totals against volume() and barycenter() as exact rational identities.
class MomentCurve {
 public:
  MomentCurve(const ConvexBody& body, const Direction& d);

  int dim() const { return dim_; }
  const Rat& min_value() const { return min_; }
  const Rat& max_value() const { return max_; }
  const Rat& total_volume() const { return total_volume_; }
  const Rat& total_moment() const { return total_moment_; }

  Rat volume_below(const Rat& t) const;
  Rat moment_below(const Rat& t) const;
  Rat volume_above(const Rat& t) const;
  Rat moment_above(const Rat& t) const;

  /// p(Bc K_{>=t}); throws EmptySlice when the upper slice has no volume.
  Rat upper_barycenter_value(const Rat& t) const;
  /// p(Bc K_{<=t}); throws EmptySlice when the lower slice has no volume.
  Rat lower_barycenter_value(const Rat& t) const;

  /// Bisection inverse of t -> volume_above(t) / total at the 1e-12
  /// relative bracket; every probe is an exact rational evaluation.
  double quantile(double tau) const;

  const PiecewisePoly& volume_poly() const { return volume_poly_; }
  const PiecewisePoly& moment_poly() const { return moment_poly_; }

 private:
  int dim_ = 0;
  Rat min_, max_;
  Rat total_volume_, total_moment_;
  PiecewisePoly volume_poly_;
  PiecewisePoly moment_poly_;
};

}  // namespace subbary
