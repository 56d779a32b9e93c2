#include "subbary/eckardt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace subbary::eckardt {

double t_of_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("tau must lie in [0, 1]");
  if (tau < kBranchTau) return 3.0 - std::sqrt(6.0 * tau);
  return std::sqrt(3.0 * (1.0 - tau));
}

double s_tau_low_branch(double tau) {
  return 3.0 - 2.0 / 3.0 * std::sqrt(6.0 * tau);
}

double s_tau_high_branch(double tau) {
  return 2.0 / (3.0 * tau) * (2.0 - std::sqrt(3.0) * std::pow(1.0 - tau, 1.5));
}

double s_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("tau must lie in [0, 1]");
  return tau < kBranchTau ? s_tau_low_branch(tau) : s_tau_high_branch(tau);
}

double ratio(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("tau must lie in [0, 1]");
  if (tau < kBranchTau) return 6.0 / (9.0 - 2.0 * std::sqrt(6.0 * tau));
  return 3.0 * tau / (2.0 - std::sqrt(3.0) * std::pow(1.0 - tau, 1.5));
}

ConvexBody realizing_polygon() {
  return ConvexBody::build(
      {
          {Rat(0), Rat(0)},
          {Rat(1), Rat(1)},
          {Rat(3), Rat(0)},
          {Rat(1), Rat(-1)},
      },
      2);
}

ValuationRecord valuation() {
  return ValuationRecord("eckardt-blowup", kLogDiscrepancy, realizing_polygon());
}

StabilityScan verify_stability(int grid) {
  if (grid < 2) throw DomainError("stability scan needs at least two points");
  std::vector<double> taus;
  taus.reserve(static_cast<std::size_t>(grid) + 3);
  for (int i = 1; i <= grid; ++i) {
    taus.push_back(static_cast<double>(i) / grid);
  }
  taus.push_back(kBranchTau);
  taus.push_back(1e-6);
  taus.push_back(1.0);

  StabilityScan scan;
  scan.min_margin = std::numeric_limits<double>::infinity();
  for (double tau : taus) {
    const double margin = ratio(tau) - stability_threshold(tau, kDim);
    if (margin < scan.min_margin) {
      scan.min_margin = margin;
      scan.argmin_tau = tau;
    }
  }
  return scan;
}

double cross_validate(int grid) {
  if (grid < 2) throw DomainError("cross-validation needs at least two points");
  const ValuationRecord v = valuation();
  double worst = 0;
  for (int i = 1; i <= grid; ++i) {
    const double tau = static_cast<double>(i) / grid;
    worst = std::max(worst, std::fabs(v.s_tau(tau) - s_tau(tau)));
  }
  return worst;
}

std::vector<Figure2Row> figure2_table(int samples) {
  if (samples < 2) throw DomainError("table needs at least two samples");
  std::vector<Figure2Row> rows;
  rows.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double tau = static_cast<double>(i) / (samples - 1);
    Figure2Row row;
    row.tau = tau;
    row.ratio = ratio(tau);
    row.threshold = stability_threshold(tau, kDim);
    row.margin = row.ratio - row.threshold;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace subbary::eckardt
