#include "subbary/moment_curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subbary {

PiecewisePoly::PiecewisePoly(std::vector<Rat> breaks,
                             std::vector<std::vector<Rat>> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  if (breaks_.size() != pieces_.size() + 1 || pieces_.empty()) {
    throw std::logic_error("inconsistent piecewise polynomial");
  }
}

Rat PiecewisePoly::eval(const Rat& t) const {
  std::size_t idx = static_cast<std::size_t>(
      std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin());
  if (idx > 0) --idx;
  if (idx >= pieces_.size()) idx = pieces_.size() - 1;
  const auto& c = pieces_[idx];
  Rat acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = acc * t + c[k];
  }
  return acc;
}

namespace {

using Poly = std::vector<Rat>;

void poly_add_inplace(Poly& a, const Poly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

// p(t) * (c0 + c1 t)
Poly poly_mul_linear(const Poly& p, const Rat& c0, const Rat& c1) {
  if (p.empty()) return {};
  Poly out(p.size() + 1, Rat(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += c0 * p[i];
    out[i + 1] += c1 * p[i];
  }
  return out;
}

// t * p(t)
Poly poly_shift_degree(const Poly& p) {
  if (p.empty()) return {};
  Poly out(p.size() + 1, Rat(0));
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i];
  return out;
}

Poly poly_antiderivative(const Poly& p) {
  Poly out(p.size() + 1, Rat(0));
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / Rat(static_cast<int>(i) + 1);
  return out;
}

Rat poly_eval(const Poly& p, const Rat& t) {
  Rat acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
  return acc;
}

// Cumulative data contributed by one simplex: an antiderivative piecewise
// polynomial per distinct knot interval, plus the saturated totals.
struct SimplexContribution {
  std::vector<Rat> breaks;
  std::vector<Poly> volume_pieces;
  std::vector<Poly> moment_pieces;
  Rat volume_total;
  Rat moment_total;
};

// Antiderivative of a piecewise density, glued continuously, starting at 0.
std::vector<Poly> accumulate_pieces(const std::vector<Poly>& density,
                                    const std::vector<Rat>& breaks,
                                    Rat& total) {
  std::vector<Poly> out(density.size());
  Rat carry = 0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    Poly anti = poly_antiderivative(density[i]);
    anti[0] += carry - poly_eval(anti, breaks[i]);
    carry = poly_eval(anti, breaks[i + 1]);
    out[i] = std::move(anti);
  }
  total = carry;
  return out;
}

// The pushforward of the uniform measure on a full-dimensional simplex
// under a linear functional is the B-spline whose knots are the vertex
// values (Curry–Schoenberg), so the density is built with the Cox–de Boor
// recursion on exact piecewise polynomials. Repeated knots fall out of
// the 0/0 -> drop convention.
SimplexContribution simplex_contribution(const std::vector<RatVec>& pts,
                                         const Rat& simplex_volume,
                                         const Direction& dir, int n) {
  std::vector<Rat> knots(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) knots[i] = dir.value(pts[i]);
  std::sort(knots.begin(), knots.end());
  if (knots.front() == knots.back()) {
    throw std::logic_error("functional constant on a full-dimensional simplex");
  }

  std::vector<Rat> breaks;
  for (const auto& q : knots) {
    if (breaks.empty() || breaks.back() != q) breaks.push_back(q);
  }
  const std::size_t intervals = breaks.size() - 1;

  // order-1 splines: indicators of the knot intervals
  std::vector<std::vector<Poly>> cur(knots.size() - 1,
                                     std::vector<Poly>(intervals));
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i] == knots[i + 1]) continue;
    for (std::size_t j = 0; j < intervals; ++j) {
      if (breaks[j] >= knots[i] && breaks[j + 1] <= knots[i + 1]) {
        cur[i][j] = Poly{Rat(1)};
      }
    }
  }

  for (int order = 2; order <= n; ++order) {
    std::vector<std::vector<Poly>> next(knots.size() - static_cast<std::size_t>(order),
                                        std::vector<Poly>(intervals));
    for (std::size_t i = 0; i + static_cast<std::size_t>(order) < knots.size(); ++i) {
      const Rat& lo = knots[i];
      const Rat& lo_end = knots[i + static_cast<std::size_t>(order) - 1];
      const Rat& hi_start = knots[i + 1];
      const Rat& hi = knots[i + static_cast<std::size_t>(order)];
      for (std::size_t j = 0; j < intervals; ++j) {
        Poly acc;
        if (lo_end > lo && !cur[i][j].empty()) {
          const Rat c1 = Rat(1) / (lo_end - lo);
          poly_add_inplace(acc, poly_mul_linear(cur[i][j], -lo * c1, c1));
        }
        if (hi > hi_start && !cur[i + 1][j].empty()) {
          const Rat c1 = Rat(-1) / (hi - hi_start);
          poly_add_inplace(acc, poly_mul_linear(cur[i + 1][j], -hi * c1, c1));
        }
        next[i][j] = std::move(acc);
      }
    }
    cur = std::move(next);
  }

  // density of p over the simplex, scaled to integrate to vol(simplex)
  const Rat scale = simplex_volume * Rat(n) / (knots.back() - knots.front());
  std::vector<Poly> density(intervals), moment_density(intervals);
  for (std::size_t j = 0; j < intervals; ++j) {
    Poly d = cur[0][j];
    for (auto& c : d) c *= scale;
    moment_density[j] = poly_shift_degree(d);
    density[j] = std::move(d);
  }

  SimplexContribution out;
  out.breaks = std::move(breaks);
  out.volume_pieces = accumulate_pieces(density, out.breaks, out.volume_total);
  out.moment_pieces = accumulate_pieces(moment_density, out.breaks, out.moment_total);
  return out;
}

}  // namespace

MomentCurve::MomentCurve(const ConvexBody& body, const Direction& d) {
  dim_ = body.dim();
  auto [lo, hi] = body.support(d);
  min_ = lo;
  max_ = hi;

  std::vector<SimplexContribution> parts;
  parts.reserve(body.triangulation().size());
  std::vector<Rat> global_breaks;
  for (const auto& simplex : body.triangulation()) {
    std::vector<RatVec> pts;
    pts.reserve(simplex.verts.size());
    for (int id : simplex.verts) pts.push_back(body.point_of(id));
    parts.push_back(simplex_contribution(pts, simplex.volume, d, dim_));
    for (const auto& b : parts.back().breaks) global_breaks.push_back(b);
  }
  std::sort(global_breaks.begin(), global_breaks.end());
  global_breaks.erase(std::unique(global_breaks.begin(), global_breaks.end()),
                      global_breaks.end());

  const std::size_t intervals = global_breaks.size() - 1;
  std::vector<Poly> volume_pieces(intervals, Poly{Rat(0)});
  std::vector<Poly> moment_pieces(intervals, Poly{Rat(0)});

  for (const auto& part : parts) {
    for (std::size_t j = 0; j < intervals; ++j) {
      const Rat& left = global_breaks[j];
      if (left >= part.breaks.back()) {
        volume_pieces[j][0] += part.volume_total;
        moment_pieces[j][0] += part.moment_total;
        continue;
      }
      if (left < part.breaks.front()) continue;
      const std::size_t local = static_cast<std::size_t>(
          std::upper_bound(part.breaks.begin(), part.breaks.end(), left) -
          part.breaks.begin() - 1);
      poly_add_inplace(volume_pieces[j], part.volume_pieces[local]);
      poly_add_inplace(moment_pieces[j], part.moment_pieces[local]);
    }
  }

  volume_poly_ = PiecewisePoly(global_breaks, std::move(volume_pieces));
  moment_poly_ = PiecewisePoly(std::move(global_breaks), std::move(moment_pieces));

  total_volume_ = volume_poly_.eval(max_);
  total_moment_ = moment_poly_.eval(max_);

  // Exact cross-checks against the triangulation route. These certify the
  // spline algebra on every construction.
  if (total_volume_ != body.volume()) {
    throw std::logic_error("moment curve volume mismatch");
  }
  if (total_moment_ != body.volume() * d.value(body.barycenter())) {
    throw std::logic_error("moment curve first-moment mismatch");
  }
}

Rat MomentCurve::volume_below(const Rat& t) const {
  if (t <= min_) return Rat(0);
  if (t >= max_) return total_volume_;
  return volume_poly_.eval(t);
}

Rat MomentCurve::moment_below(const Rat& t) const {
  if (t <= min_) return Rat(0);
  if (t >= max_) return total_moment_;
  return moment_poly_.eval(t);
}

Rat MomentCurve::volume_above(const Rat& t) const {
  return total_volume_ - volume_below(t);
}

Rat MomentCurve::moment_above(const Rat& t) const {
  return total_moment_ - moment_below(t);
}

Rat MomentCurve::upper_barycenter_value(const Rat& t) const {
  const Rat v = volume_above(t);
  if (v == 0) throw EmptySlice("upper slice has zero volume");
  return moment_above(t) / v;
}

Rat MomentCurve::lower_barycenter_value(const Rat& t) const {
  const Rat v = volume_below(t);
  if (v == 0) throw EmptySlice("lower slice has zero volume");
  return moment_below(t) / v;
}

double MomentCurve::quantile(double tau) const {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw DomainError("quantile parameter must lie in [0, 1]");
  }
  if (tau == 0.0) return to_double(max_);
  if (tau == 1.0) return to_double(min_);

  // vol_below(t) = (1 - tau) * total  <=>  vol_above(t) = tau * total
  const Rat target = (Rat(1) - rat_from_double(tau)) * total_volume_;
  double lo = to_double(min_);
  double hi = to_double(max_);
  const double width = hi - lo;
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * width; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const Rat value = volume_below(rat_from_double(mid));
    if (value == target) return mid;
    if (value < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace subbary
