#include "subbary/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "subbary/moment_curve.hpp"

namespace subbary {

namespace {

constexpr double kSlopeTolerance = 1e-12;

double ipow(double x, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double binomial(int m, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(m - k + i) / static_cast<double>(i);
  return r;
}

// int_a^b s^p (alpha + beta s)^m ds for integer p >= 0, expanded through
// the binomial theorem and integrated term by term.
double integrate_piece_int(double a, double b, double alpha, double beta,
                           int m, int p) {
  if (m == 0) {
    return (ipow(b, p + 1) - ipow(a, p + 1)) / static_cast<double>(p + 1);
  }
  double total = 0;
  for (int k = 0; k <= m; ++k) {
    const double coeff = binomial(m, k) * ipow(alpha, m - k) * ipow(beta, k);
    if (coeff == 0) continue;
    const int deg = p + k;
    total += coeff * (ipow(b, deg + 1) - ipow(a, deg + 1)) / static_cast<double>(deg + 1);
  }
  return total;
}

// 16-point Gauss–Legendre abscissas/weights on [-1, 1] (positive half).
constexpr double kGlNodes[8] = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722739,
    0.61787624440264375, 0.75540440835500303, 0.86563120238783174,
    0.94457502307323258, 0.98940093499164993};
constexpr double kGlWeights[8] = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254,
    0.14959598881657673, 0.12462897125553387, 0.09515851168249278,
    0.06225352393864789, 0.02715245941175409};

template <typename F>
double gl16(F&& fn, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double total = 0;
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kGlNodes[i];
    total += kGlWeights[i] * (fn(mid - dx) + fn(mid + dx));
  }
  return total * half;
}

template <typename F>
double adaptive_gl16(F&& fn, double a, double b, double tol, int depth) {
  const double whole = gl16(fn, a, b);
  const double mid = 0.5 * (a + b);
  const double split = gl16(fn, a, mid) + gl16(fn, mid, b);
  if (depth >= 30 || std::fabs(whole - split) <= tol * (1.0 + std::fabs(split))) {
    return split;
  }
  return adaptive_gl16(fn, a, mid, 0.5 * tol, depth + 1) +
         adaptive_gl16(fn, mid, b, 0.5 * tol, depth + 1);
}

// int_a^b s^p (alpha + beta s)^m ds for real p >= 0.
double integrate_piece(double a, double b, double alpha, double beta, int m,
                       double p) {
  if (b <= a) return 0;
  if (p == std::floor(p) && p >= 0 && p < 64) {
    return integrate_piece_int(a, b, alpha, beta, m, static_cast<int>(p));
  }
  auto fn = [&](double s) { return std::pow(s, p) * ipow(alpha + beta * s, m); };
  return adaptive_gl16(fn, a, b, 1e-12, 0);
}

}  // namespace

ConcaveProfile::ConcaveProfile(std::vector<double> breakpoints,
                               std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2 || breakpoints_.size() != values_.size()) {
    throw ParseError("profile needs matching breakpoints and values, at least two");
  }
  if (breakpoints_.front() != 0.0) {
    throw ParseError("profile domain must start at 0");
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw ParseError("profile breakpoints must be strictly increasing");
    }
  }
  double peak = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0)) {
      throw ParseError("profile values must be nonnegative");
    }
    peak = std::max(peak, values_[i]);
  }
  if (peak == 0) throw ParseError("profile must not be identically zero");

  double prev_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    const double slope =
        (values_[i + 1] - values_[i]) / (breakpoints_[i + 1] - breakpoints_[i]);
    if (slope > prev_slope + kSlopeTolerance) {
      throw ProfileNotConcave("slope increases at breakpoint " + std::to_string(i),
                              i);
    }
    prev_slope = slope;
  }
}

ConcaveProfile ConcaveProfile::constant(double value, double domain_length) {
  return ConcaveProfile({0.0, domain_length}, {value, value});
}

double ConcaveProfile::operator()(double s) const {
  if (s <= breakpoints_.front()) return values_.front();
  if (s >= breakpoints_.back()) return values_.back();
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  const double w = (s - breakpoints_[i]) / (breakpoints_[i + 1] - breakpoints_[i]);
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

namespace {

// int_lo^hi s^p f(s)^{n-1} ds across the profile's linear pieces.
double integrate_profile(const ConcaveProfile& f, int n, double p, double lo,
                         double hi) {
  if (hi <= lo) return 0;
  const auto& bp = f.breakpoints();
  const auto& vals = f.values();
  double total = 0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double a = std::max(lo, bp[i]);
    const double b = std::min(hi, bp[i + 1]);
    if (b <= a) continue;
    const double slope = (vals[i + 1] - vals[i]) / (bp[i + 1] - bp[i]);
    const double alpha = vals[i] - slope * bp[i];
    total += integrate_piece(a, b, alpha, slope, n - 1, p);
  }
  return total;
}

double clamp_to_domain(const ConcaveProfile& f, double t) {
  const double T = f.domain_length();
  const double eps = 1e-12 * std::max(1.0, T);
  if (t < 0 && t >= -eps) return 0;
  if (t > T && t <= T + eps) return T;
  if (t < 0 || t > T) {
    throw DomainError("t outside the profile domain [0, T]");
  }
  return t;
}

double one_minus_pow(double base_complement, double exponent) {
  // 1 - (1 - x)^e, computed without cancellation for small x.
  if (base_complement >= 1.0) return 1.0;
  return -std::expm1(exponent * std::log1p(-base_complement));
}

}  // namespace

MomentSet moments(const ConcaveProfile& f, int n, double t) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  t = clamp_to_domain(f, t);
  const double T = f.domain_length();

  MomentSet m;
  m.t = t;
  m.v_le = integrate_profile(f, n, 0, 0, t);
  m.v_ge = integrate_profile(f, n, 0, t, T);
  m.tau_ge = m.v_ge / (m.v_le + m.v_ge);
  if (m.v_le > 0) m.b_le = integrate_profile(f, n, 1, 0, t) / m.v_le;
  if (m.v_ge > 0) m.b_ge = integrate_profile(f, n, 1, t, T) / m.v_ge;
  return m;
}

InequalityCheck check_weighted_nh(const ConcaveProfile& f, int n, double p,
                                  double t) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  if (!(p >= 0)) throw DomainError("weight exponent must be nonnegative");
  t = clamp_to_domain(f, t);
  const double T = f.domain_length();

  const double mass_le = integrate_profile(f, n, 0, 0, t);
  const double mass_ge = integrate_profile(f, n, 0, t, T);
  const double tau = mass_ge / (mass_le + mass_ge);

  const double num_le = integrate_profile(f, n, p, 0, t);
  const double num_ge = integrate_profile(f, n, p, t, T);

  InequalityCheck out;
  out.lhs = num_ge / (num_le + num_ge);
  out.rhs = one_minus_pow(tau, (static_cast<double>(n) + p) / static_cast<double>(n));
  out.slack = out.lhs - out.rhs;
  return out;
}

InequalityCheck check_functional_nh(const ConcaveProfile& f, int n, double t) {
  return check_weighted_nh(f, n, 1.0, t);
}

ProofDiagnostics proof_diagnostics(const ConcaveProfile& f, int n, double t) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  t = clamp_to_domain(f, t);
  if (t == 0) {
    throw DomainError("rescaled profile is undefined at t = 0 (tau = 1)");
  }
  const double T = f.domain_length();
  const MomentSet m = moments(f, n, t);
  const double shrink = std::exp(std::log1p(-m.tau_ge) / static_cast<double>(n));

  ProofDiagnostics out;
  out.domain_length = T;
  out.scaled_t = t / shrink;
  out.rescaled_gap_min = std::numeric_limits<double>::infinity();
  constexpr int kGrid = 1000;
  for (int i = 0; i < kGrid; ++i) {
    const double s = T * static_cast<double>(i) / (kGrid - 1);
    const double gap = f(shrink * s) / shrink - f(s);
    out.rescaled_gap_min = std::min(out.rescaled_gap_min, gap);
  }
  return out;
}

ProfileExtraction body_to_profile(const ConvexBody& body, const Direction& d,
                                  int grid) {
  if (body.dim() < 2) {
    throw DimensionTooLow("cross-section profiles need dimension >= 2");
  }
  if (grid < 2) throw DomainError("profile grid needs at least two samples");

  const MomentCurve curve(body, d);
  const Rat osc = curve.max_value() - curve.min_value();
  const double T = to_double(osc);
  const int n = body.dim();
  const Rat step = osc / Rat(grid - 1);
  // central-difference width; exact evaluation allows it far below the grid
  const Rat h = osc / Rat(BigInt("10000000000"), BigInt(1));

  std::vector<double> breakpoints(static_cast<std::size_t>(grid));
  std::vector<double> widths(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const Rat s = curve.min_value() + step * Rat(i);
    Rat a = s - h;
    Rat b = s + h;
    if (a < curve.min_value()) a = curve.min_value();
    if (b > curve.max_value()) b = curve.max_value();
    const Rat slope = (curve.volume_below(b) - curve.volume_below(a)) / (b - a);
    breakpoints[static_cast<std::size_t>(i)] =
        T * static_cast<double>(i) / (grid - 1);
    widths[static_cast<std::size_t>(i)] = to_double(slope);
  }
  breakpoints.front() = 0.0;

  std::vector<double> values(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const double w = std::max(widths[static_cast<std::size_t>(i)], 0.0);
    values[static_cast<std::size_t>(i)] =
        n == 2 ? w : std::pow(w, 1.0 / static_cast<double>(n - 1));
  }

  // Pool-adjacent-violators on the slope sequence: project onto
  // non-increasing slopes, then rebuild values anchored at the first one.
  const std::size_t m = values.size() - 1;
  std::vector<double> mean(m), weight(m);
  std::vector<std::size_t> span(m);
  std::size_t blocks = 0;
  const double dx = T / static_cast<double>(grid - 1);
  for (std::size_t i = 0; i < m; ++i) {
    mean[blocks] = (values[i + 1] - values[i]) / dx;
    weight[blocks] = 1;
    span[blocks] = 1;
    ++blocks;
    while (blocks >= 2 && mean[blocks - 1] > mean[blocks - 2]) {
      const double w = weight[blocks - 2] + weight[blocks - 1];
      mean[blocks - 2] =
          (mean[blocks - 2] * weight[blocks - 2] + mean[blocks - 1] * weight[blocks - 1]) / w;
      weight[blocks - 2] = w;
      span[blocks - 2] += span[blocks - 1];
      --blocks;
    }
  }

  std::vector<double> projected(values.size());
  projected[0] = values[0];
  std::size_t at = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t k = 0; k < span[b]; ++k, ++at) {
      projected[at + 1] = projected[at] + mean[b] * dx;
    }
  }

  double shift = 0;
  for (double v : projected) shift = std::min(shift, v);
  shift = -shift;  // lift so the minimum is nonnegative
  double moved = shift;
  for (std::size_t i = 0; i < projected.size(); ++i) {
    projected[i] += shift;
    moved = std::max(moved, std::fabs(projected[i] - values[i]));
  }

  ProfileExtraction out{ConcaveProfile(std::move(breakpoints), std::move(projected)),
                        moved, moved > 1e-6};
  return out;
}

}  // namespace subbary
