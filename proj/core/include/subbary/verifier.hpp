#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "subbary/convex_body.hpp"
#include "subbary/profile.hpp"

namespace subbary {

struct SuiteConfig {
  std::uint64_t seed = 42;
  /// Instances per suite: bodies for geometric suites, profiles for the
  /// functional ones. The Monte Carlo suite caps itself at 50 instances.
  int bodies = 500;
  /// Body suites accept dims in [2, 8]; profile suites in [1, 8].
  std::vector<int> dims = {2, 3, 4, 5};
  /// Random vertex count range; {0, 0} means the per-dim default [n+2, n+6].
  std::pair<int, int> vertices_per_body = {0, 0};
  int t_grid = 32;
  int tau_grid = 64;
  double tolerance = 1e-9;
  /// 0 = hardware concurrency. Results never depend on the thread count:
  /// instances are seeded independently and merged by index.
  int threads = 0;
};

enum class Suite {
  GenHammer,
  FunctionalNh,
  WeightedNh,
  Fujita1,
  Fujita2,
  ClassicalNhLimits,
  MassBalance,
  McOracle,
  All,
};

Suite suite_from_name(const std::string& name);
const char* suite_name(Suite s);
std::vector<Suite> individual_suites();

struct Violation {
  std::string check;
  std::string inputs_digest;
  double slack = 0;
};

struct SuiteResult {
  std::map<std::string, std::uint64_t> checks_run;
  std::map<std::string, double> min_slack;
  std::vector<Violation> violations;
  double runtime_seconds = 0;

  void record(const std::string& check, double slack, double tolerance,
              const std::string& inputs_digest);
  void merge(const SuiteResult& other);

  /// Hash of every deterministic field (runtime excluded); identical
  /// configs must reproduce it bit for bit.
  std::uint64_t digest() const;
};

/// Deterministic body generator: dyadic-grid points in [0,1]^n (denominator
/// 2^16) with hull retries on degeneracy, or with probability 0.2 one of
/// the structured bodies (simplex, cube, cross-polytope, halved simplex).
ConvexBody gen_body(std::uint64_t seed_stream, int n, int v_count);

/// Structured catalog used both by gen_body and the suite tails.
enum class StructuredKind { Simplex, Cube, CrossPolytope, HalvedSimplex };
ConvexBody structured_body(StructuredKind kind, int n, std::uint64_t seed_stream);

/// Random concave profile: sorted slopes over random breakpoints, lifted
/// to stay nonnegative.
ConcaveProfile gen_profile(std::uint64_t seed_stream);

SuiteResult run_suite(const SuiteConfig& config, Suite which);

}  // namespace subbary
