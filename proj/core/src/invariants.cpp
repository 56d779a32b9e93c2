#include "subbary/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace subbary {

namespace {

// 1 - (1 - tau)^e without cancellation near tau = 0.
double one_minus_pow(double tau, double exponent) {
  if (tau >= 1.0) return 1.0;
  return -std::expm1(exponent * std::log1p(-tau));
}

void require_unit_interval(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw DomainError("tau must lie in [0, 1]");
  }
}

}  // namespace

ValuationRecord::ValuationRecord(std::string name, double log_discrepancy,
                                 ConvexBody body, double scale,
                                 bool allow_zero_discrepancy)
    : name_(std::move(name)),
      raw_discrepancy_(log_discrepancy),
      scale_(scale) {
  if (!(scale_ > 0)) throw DomainError("valuation scale must be positive");
  if (allow_zero_discrepancy ? !(raw_discrepancy_ >= 0) : !(raw_discrepancy_ > 0)) {
    throw DomainError("log discrepancy must be positive (pass the override "
                      "flag to admit zero)");
  }
  body_ = std::make_shared<const ConvexBody>(std::move(body));
  auto [lo, hi] = body_->support(Direction::coordinate(0));
  if (lo < 0) {
    throw DomainError("vanishing orders must be nonnegative: min p1 < 0");
  }
  (void)hi;
  curve_ = std::make_shared<const MomentCurve>(*body_, Direction::coordinate(0));
}

double ValuationRecord::sigma() const {
  return scale_ * to_double(curve_->min_value());
}

double ValuationRecord::s0() const {
  return scale_ * to_double(curve_->max_value());
}

double ValuationRecord::s1() const {
  return scale_ * to_double(curve_->total_moment() / curve_->total_volume());
}

double ValuationRecord::s_tau(double tau) const {
  require_unit_interval(tau);
  if (tau == 0.0) return s0();
  if (tau == 1.0) return s1();
  const double t = curve_->quantile(tau);
  return scale_ * to_double(curve_->upper_barycenter_value(rat_from_double(t)));
}

double ValuationRecord::quantile(double tau) const {
  return scale_ * curve_->quantile(tau);
}

QuantileCurve sample_quantile_curve(const ValuationRecord& v, int grid) {
  if (grid < 2) throw DomainError("quantile curve needs at least two samples");
  QuantileCurve curve;
  curve.valuation = v.name();
  curve.n = v.dim();
  curve.samples.reserve(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const double tau = static_cast<double>(i) / (grid - 1);
    curve.samples.push_back({tau, v.quantile(tau), v.s_tau(tau)});
  }
  return curve;
}

JumpingData make_jumping_data(int k, std::vector<double> j) {
  if (k < 1) throw DomainError("power k must be positive");
  if (j.empty()) throw DomainError("jumping numbers must be nonempty");
  if (!std::is_sorted(j.begin(), j.end())) {
    throw DomainError("jumping numbers must be sorted ascending");
  }
  for (double x : j) {
    if (!(x >= 0)) throw DomainError("jumping numbers must be nonnegative");
  }
  JumpingData data;
  data.k = k;
  data.d_k = static_cast<int>(j.size());
  data.j = std::move(j);
  return data;
}

double discrete_s_tilde(const JumpingData& data, int m, int n) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  if (m < 1 || m > data.d_k) {
    throw DomainError("m must lie in [1, d_k]");
  }
  double head = 0;
  for (int l = 0; l < m; ++l) head += data.j[static_cast<std::size_t>(l)];
  head /= static_cast<double>(data.k) * static_cast<double>(m);

  const double ratio = static_cast<double>(m) / static_cast<double>(data.d_k);
  const double tail = static_cast<double>(data.d_k - m) / static_cast<double>(m) *
                      one_minus_pow(ratio, 1.0 / static_cast<double>(n)) *
                      data.j.back() / static_cast<double>(data.k);
  return head + tail;
}

namespace {

template <typename Denominator>
RatioResult minimize_ratio(const std::vector<ValuationRecord>& candidates,
                           Denominator&& denom) {
  if (candidates.empty()) throw EmptyCandidates("no candidate valuations");
  const int n = candidates.front().dim();
  for (const auto& v : candidates) {
    if (v.dim() != n) throw DomainError("candidates must share one dimension");
  }

  RatioResult out;
  out.value = std::numeric_limits<double>::infinity();
  for (const auto& v : candidates) {
    const double d = denom(v);
    if (!(d > 0)) {
      out.skipped.push_back(v.name());
      continue;
    }
    const double ratio = v.log_discrepancy() / d;
    if (ratio < out.value) {
      out.value = ratio;
      out.argmin = v.name();
    }
  }
  if (out.argmin.empty()) {
    throw UndefinedRatio("every candidate had a vanishing denominator");
  }
  return out;
}

}  // namespace

RatioResult delta_tau(const std::vector<ValuationRecord>& candidates,
                      double tau) {
  require_unit_interval(tau);
  return minimize_ratio(candidates,
                        [tau](const ValuationRecord& v) { return v.s_tau(tau); });
}

RatioResult delta_tilde_tau(const std::vector<ValuationRecord>& candidates,
                            double tau) {
  require_unit_interval(tau);
  if (tau == 0.0) {
    return minimize_ratio(candidates, [](const ValuationRecord& v) {
      return v.s0() + v.sigma() / static_cast<double>(v.dim());
    });
  }
  return minimize_ratio(candidates, [tau](const ValuationRecord& v) {
    const double n = static_cast<double>(v.dim());
    const double correction =
        (1.0 - tau) / tau * one_minus_pow(tau, 1.0 / n) * v.sigma();
    return v.s_tau(tau) + correction;
  });
}

RatioResult alpha_tilde(const std::vector<ValuationRecord>& candidates) {
  return delta_tilde_tau(candidates, 0.0);
}

double stability_threshold(double tau, int n) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  require_unit_interval(tau);
  const double nn = static_cast<double>(n);
  if (tau == 0.0) return nn / (nn + 1.0);
  return tau / one_minus_pow(tau, (nn + 1.0) / nn);
}

double weak_stability_threshold(double tau, int n) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  require_unit_interval(tau);
  const double nn = static_cast<double>(n);
  return nn / (nn + 1.0 - std::pow(tau, 1.0 / nn));
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::StableCriterionMet:
      return "stable-criterion-met";
    case Verdict::SemistableCriterionMet:
      return "semistable-criterion-met";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

StabilityReport stability_report(const std::vector<ValuationRecord>& candidates,
                                 double tau) {
  require_unit_interval(tau);
  if (candidates.empty()) throw EmptyCandidates("no candidate valuations");
  const int n = candidates.front().dim();

  const RatioResult tilde = delta_tilde_tau(candidates, tau);
  const RatioResult plain = delta_tau(candidates, tau);

  StabilityReport report;
  report.tau = tau;
  report.n = n;
  report.delta_tilde = tilde.value;
  report.threshold = stability_threshold(tau, n);
  report.argmin = tilde.argmin;
  report.delta = plain.value;
  report.weak_threshold = weak_stability_threshold(tau, n);
  report.meets_weak = tilde.value > report.weak_threshold + 1e-12;
  for (const auto& s : tilde.skipped) {
    report.warnings.push_back("skipped candidate with vanishing S: " + s);
  }

  if (tilde.value > report.threshold + 1e-12) {
    report.verdict = Verdict::StableCriterionMet;
  } else if (tilde.value >= report.threshold - 1e-12) {
    report.verdict = Verdict::SemistableCriterionMet;
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

ComparisonCheck check_fujita_first(const ValuationRecord& v, double tau) {
  require_unit_interval(tau);
  const double n = static_cast<double>(v.dim());
  ComparisonCheck out;
  if (tau == 0.0) {
    out.value = v.s0();
    out.bound = (n + 1.0) / n * v.s1() - v.sigma() / n;
  } else {
    out.value = v.s_tau(tau);
    out.bound = one_minus_pow(tau, (n + 1.0) / n) / tau * (v.s1() - v.sigma()) +
                v.sigma();
  }
  out.slack = out.value - out.bound;
  return out;
}

SecondComparisonCheck check_fujita_second(const ValuationRecord& v, double tau) {
  require_unit_interval(tau);
  const double n = static_cast<double>(v.dim());
  const double root = std::pow(tau, 1.0 / n);
  SecondComparisonCheck out;
  out.slack_interp = v.s_tau(tau) - ((1.0 - root) * v.s0() + root * v.s1());
  out.slack_endpoint =
      v.s1() - (v.s0() / (n + 1.0) + n * v.sigma() / (n + 1.0));
  return out;
}

}  // namespace subbary
