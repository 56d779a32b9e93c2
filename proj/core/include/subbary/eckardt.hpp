#pragma once

#include <vector>

#include "subbary/convex_body.hpp"
#include "subbary/invariants.hpp"

namespace subbary::eckardt {

// Closed-form reference curves for the blow-up valuation at an Eckardt
// point of a cubic surface: A = 2, sigma = 0, S_0 = 3, n = 2, with slice
// areas 3 - t^2 on [0,1] and (3-t)^2/2 on (1,3]. The branch point in tau
// is 2/3.

inline constexpr double kLogDiscrepancy = 2.0;
inline constexpr double kSigma = 0.0;
inline constexpr double kS0 = 3.0;
inline constexpr int kDim = 2;
inline constexpr double kBranchTau = 2.0 / 3.0;

/// Quantile threshold t(tau): 3 - sqrt(6 tau) below the branch point,
/// sqrt(3 (1 - tau)) above it; continuous with t(2/3) = 1.
double t_of_tau(double tau);

/// Both branch formulas for S_tau, exposed for branch-agreement tests.
double s_tau_low_branch(double tau);   // valid on [0, 2/3]
double s_tau_high_branch(double tau);  // valid on [2/3, 1]
double s_tau(double tau);

/// A / S_tau; tau = 0 returns the limit 2/3 (the alpha invariant).
double ratio(double tau);

/// The symmetric quadrilateral (0,0),(1,1),(3,0),(1,-1) realizing the
/// slice-area law above (width 2t then 3-t along the first coordinate).
ConvexBody realizing_polygon();

/// The realizing polygon wrapped as a candidate valuation with A = 2.
ValuationRecord valuation();

struct StabilityScan {
  double min_margin = 0;
  double argmin_tau = 0;
};

/// ratio(tau) - stability_threshold(tau, 2) over a uniform grid on (0, 1]
/// plus the branch point and the endpoints 1e-6 and 1. The margin must
/// stay positive: the criterion certifies stability at every quantile.
StabilityScan verify_stability(int grid);

/// Max |generic pipeline S_tau - closed form| over a uniform grid on
/// (0, 1]; exercises the quantile+sub-barycenter path end to end.
double cross_validate(int grid);

struct Figure2Row {
  double tau = 0;
  double ratio = 0;
  double threshold = 0;
  double margin = 0;
};

/// Sampled comparison of the ratio curve against the threshold curve on a
/// uniform [0, 1] grid; ready for plotting.
std::vector<Figure2Row> figure2_table(int samples);

}  // namespace subbary::eckardt
