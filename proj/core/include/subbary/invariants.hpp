#pragma once

#include <memory>
#include <string>
#include <vector>

#include "subbary/convex_body.hpp"
#include "subbary/moment_curve.hpp"

namespace subbary {

/// Named valuation: log discrepancy A, divisorial scale C, and the body
/// whose first coordinate records vanishing orders. All derived
/// invariants (sigma, s0, s1, s_tau) carry the factor C, so every ratio
/// A / S is scale-free. The first-coordinate support must start at a
/// nonnegative value.
class ValuationRecord {
 public:
  ValuationRecord(std::string name, double log_discrepancy, ConvexBody body,
                  double scale = 1.0, bool allow_zero_discrepancy = false);

  const std::string& name() const { return name_; }
  int dim() const { return body_->dim(); }
  const ConvexBody& body() const { return *body_; }
  const MomentCurve& curve() const { return *curve_; }
  double scale() const { return scale_; }

  double log_discrepancy() const { return scale_ * raw_discrepancy_; }
  double sigma() const;   // C * min p1, the minimal vanishing order
  double s0() const;      // C * max p1, the maximal vanishing order
  double s1() const;      // C * p1(Bc body)
  /// C * p1(Bc of the upper tau-quantile slice); tau = 0 returns s0().
  double s_tau(double tau) const;
  /// Quantile threshold on the valuation's own scale (C * Q(tau)).
  double quantile(double tau) const;

 private:
  std::string name_;
  double raw_discrepancy_;
  double scale_;
  std::shared_ptr<const ConvexBody> body_;
  std::shared_ptr<const MomentCurve> curve_;
};

struct QuantileSample {
  double tau = 0;
  double threshold = 0;  // Q(tau)
  double s = 0;          // S_tau
};

struct QuantileCurve {
  std::string valuation;
  int n = 0;
  std::vector<QuantileSample> samples;
};

/// Uniform tau-grid sampling of (tau, Q, S_tau); includes both endpoints.
QuantileCurve sample_quantile_curve(const ValuationRecord& v, int grid);

/// Sorted jumping numbers of one power k: d_k values j_1 <= ... <= j_{d_k}.
struct JumpingData {
  int k = 1;
  int d_k = 0;
  std::vector<double> j;
};
JumpingData make_jumping_data(int k, std::vector<double> j);

/// Discrete tail invariant built from the m smallest jumping numbers:
///   (1/(km)) sum_{l<=m} j_l + ((d_k-m)/m) (1-(1-m/d_k)^{1/n}) j_{d_k}/k.
double discrete_s_tilde(const JumpingData& data, int m, int n);

/// Minimum of A/S over a finite candidate list; an upper bound for the
/// infimum over all valuations. Candidates whose denominator vanishes are
/// skipped and reported. Ties keep the first candidate in input order.
struct RatioResult {
  double value = 0;
  std::string argmin;
  std::vector<std::string> skipped;
};

RatioResult delta_tau(const std::vector<ValuationRecord>& candidates,
                      double tau);

/// Sigma-corrected variant: at tau = 0 the denominator is S0 + sigma/n
/// (the big-cone alpha correction); for tau in (0,1] it is
/// S_tau + ((1-tau)/tau)(1-(1-tau)^{1/n}) sigma. Coincides with delta_tau
/// when sigma = 0 and at tau = 1.
RatioResult delta_tilde_tau(const std::vector<ValuationRecord>& candidates,
                            double tau);

/// delta_tilde_tau at tau = 0.
RatioResult alpha_tilde(const std::vector<ValuationRecord>& candidates);

/// Sufficiency threshold for the stability criterion: n/(n+1) at tau = 0,
/// tau / (1 - (1-tau)^{(n+1)/n}) otherwise; continuous, increasing to 1.
double stability_threshold(double tau, int n);

/// Weaker interpolating threshold n / (n+1 - tau^{1/n}); always >= the
/// strong one.
double weak_stability_threshold(double tau, int n);

enum class Verdict { StableCriterionMet, SemistableCriterionMet, Inconclusive };

const char* verdict_name(Verdict v);

/// One-directional criterion: clearing the threshold certifies stability;
/// failing it decides nothing.
struct StabilityReport {
  double tau = 0;
  int n = 0;
  double delta_tilde = 0;
  double threshold = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::string argmin;
  // secondary comparison data
  double delta = 0;
  double weak_threshold = 0;
  bool meets_weak = false;
  std::vector<std::string> warnings;
};

StabilityReport stability_report(const std::vector<ValuationRecord>& candidates,
                                 double tau);

/// Lower bound on S_tau through S_1 and sigma; slack >= 0 up to rounding:
///   tau = 0:    S_0 >= (n+1)/n S_1 - sigma/n
///   tau > 0:    S_tau >= (1/tau)(1-(1-tau)^{(n+1)/n})(S_1 - sigma) + sigma
struct ComparisonCheck {
  double value = 0;  // S_tau (or S_0)
  double bound = 0;
  double slack = 0;  // value - bound
};
ComparisonCheck check_fujita_first(const ValuationRecord& v, double tau);

/// Interpolation and endpoint bounds:
///   S_tau >= (1-tau^{1/n}) S_0 + tau^{1/n} S_1      (slack_interp)
///   S_1  >= S_0/(n+1) + n sigma/(n+1)               (slack_endpoint)
struct SecondComparisonCheck {
  double slack_interp = 0;
  double slack_endpoint = 0;
};
SecondComparisonCheck check_fujita_second(const ValuationRecord& v, double tau);

}  // namespace subbary
