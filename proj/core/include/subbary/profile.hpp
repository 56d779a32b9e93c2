#pragma once

#include <optional>
#include <vector>

#include "subbary/convex_body.hpp"
#include "subbary/errors.hpp"

namespace subbary {

/// Piecewise-linear concave profile f : [0, T] -> R>=0, not identically
/// zero. Slopes must be non-increasing across breakpoints within 1e-12.
class ConcaveProfile {
 public:
  ConcaveProfile(std::vector<double> breakpoints, std::vector<double> values);

  static ConcaveProfile constant(double value, double domain_length);

  double domain_length() const { return breakpoints_.back(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

  double operator()(double s) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Volumes and partial barycenters of the weight f^{n-1} split at t.
/// b_le / b_ge are absent when the corresponding mass vanishes.
struct MomentSet {
  double t = 0;
  double v_le = 0;
  double v_ge = 0;
  double tau_ge = 0;
  std::optional<double> b_le;
  std::optional<double> b_ge;
};

struct InequalityCheck {
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // lhs - rhs; contract: >= -1e-9
};

struct ProofDiagnostics {
  double rescaled_gap_min = 0;  // min over a grid of F - f; contract >= -1e-9
  double scaled_t = 0;          // (1-tau)^{-1/n} * t; contract <= T + 1e-9
  double domain_length = 0;
};

/// Closed-form integration of s^p f(s)^{n-1} per linear piece for integer
/// p; adaptive 16-point Gauss–Legendre (tolerance 1e-12) otherwise.
MomentSet moments(const ConcaveProfile& f, int n, double t);

/// Tail-mass inequality for the first moment of f^{n-1}:
///   int_t^T s f^{n-1} / int_0^T s f^{n-1} >= 1 - (1-tau)^{(n+1)/n}.
InequalityCheck check_functional_nh(const ConcaveProfile& f, int n, double t);

/// Exposes the two key intermediate bounds of the rescaling argument
/// behind check_functional_nh as testable numbers. t = 0 (tau = 1) is a
/// domain error because the rescaled profile is undefined there.
ProofDiagnostics proof_diagnostics(const ConcaveProfile& f, int n, double t);

/// Weighted variant with weight s^p, p >= 0:
///   int_t^T s^p f^{n-1} / int_0^T s^p f^{n-1} >= 1 - (1-tau)^{(n+p)/n}.
InequalityCheck check_weighted_nh(const ConcaveProfile& f, int n, double p,
                                  double t);

struct ProfileExtraction {
  ConcaveProfile profile;
  /// Largest value moved by the concavity projection; a value above 1e-6
  /// deserves a warning since cross-section roots are concave up to
  /// sampling error only.
  double max_projection_shift = 0;
  bool projection_warning = false;
};

/// Samples cross-section (n-1)-volumes of the body along d via central
/// differences of the exact cumulative volume on a uniform grid, takes
/// (n-1)-th roots, and projects onto concavity with pool-adjacent
/// violators on the slopes. The profile lives on [0, osc] with
/// s = p(x) - min p. Throws DimensionTooLow for 1-dimensional bodies.
ProfileExtraction body_to_profile(const ConvexBody& body, const Direction& d,
                                  int grid);

}  // namespace subbary
