#include "subbary/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include "subbary/invariants.hpp"
#include "subbary/moment_curve.hpp"

namespace subbary {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a_bytes(const void* data, std::size_t len, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t fnv1a_str(const std::string& s, std::uint64_t h) {
  return fnv1a_bytes(s.data(), s.size(), h);
}

std::uint64_t fnv1a_u64(std::uint64_t v, std::uint64_t h) {
  return fnv1a_bytes(&v, sizeof(v), h);
}

std::uint64_t fnv1a_double(double d, std::uint64_t h) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof(bits));
  return fnv1a_u64(bits, h);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt, std::uint64_t index) {
  return splitmix64(splitmix64(seed + 0x9E3779B97F4A7C15ULL * salt) ^
                    splitmix64(index));
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

// mt19937_64 is fully pinned by the standard, so streams reproduce across
// platforms; doubles are derived manually for the same reason.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t s) : gen(s) {}
  std::uint64_t bits() { return gen(); }
  double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rat dyadic_unit() {
    return Rat(static_cast<long>(bits() & 0xFFFFULL), 65536L);
  }
};

RatVec dyadic_point(Rng& rng, int n) {
  RatVec p(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(j)] = rng.dyadic_unit();
  return p;
}

Direction random_direction(Rng& rng, int n) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    RatVec v(static_cast<std::size_t>(n));
    bool nonzero = false;
    for (int j = 0; j < n; ++j) {
      v[static_cast<std::size_t>(j)] = rng.dyadic_unit() - Rat(1, 2);
      nonzero = nonzero || v[static_cast<std::size_t>(j)] != 0;
    }
    if (nonzero) return Direction::vector(std::move(v));
  }
  throw GenerationExhausted("could not draw a nonzero direction");
}

double one_minus_pow(double tau, double exponent) {
  if (tau >= 1.0) return 1.0;
  return -std::expm1(exponent * std::log1p(-tau));
}

// Double value standing in for an exact-arithmetic slack: any strictly
// negative exact value is forced below every practical tolerance so the
// violation cannot round away.
double exact_slack(const Rat& s) {
  double d = to_double(s);
  if (s < 0 && d > -1.0) d = -1.0;
  if (s >= 0 && d < 0.0) d = 0.0;
  return d;
}

double exact_zero_slack(const Rat& difference) {
  return difference == 0 ? 0.0 : -1.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// SuiteResult

void SuiteResult::record(const std::string& check, double slack,
                         double tolerance, const std::string& inputs_digest) {
  ++checks_run[check];
  auto it = min_slack.find(check);
  if (it == min_slack.end()) {
    min_slack.emplace(check, slack);
  } else if (slack < it->second) {
    it->second = slack;
  }
  if (slack < -tolerance) {
    violations.push_back(Violation{check, inputs_digest, slack});
  }
}

void SuiteResult::merge(const SuiteResult& other) {
  for (const auto& [name, count] : other.checks_run) checks_run[name] += count;
  for (const auto& [name, slack] : other.min_slack) {
    auto it = min_slack.find(name);
    if (it == min_slack.end()) {
      min_slack.emplace(name, slack);
    } else if (slack < it->second) {
      it->second = slack;
    }
  }
  violations.insert(violations.end(), other.violations.begin(),
                    other.violations.end());
}

std::uint64_t SuiteResult::digest() const {
  std::uint64_t h = kFnvOffset;
  for (const auto& [name, count] : checks_run) {
    h = fnv1a_str(name, h);
    h = fnv1a_u64(count, h);
  }
  for (const auto& [name, slack] : min_slack) {
    h = fnv1a_str(name, h);
    h = fnv1a_double(slack, h);
  }
  for (const auto& v : violations) {
    h = fnv1a_str(v.check, h);
    h = fnv1a_str(v.inputs_digest, h);
    h = fnv1a_double(v.slack, h);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Generators

ConvexBody structured_body(StructuredKind kind, int n, std::uint64_t seed_stream) {
  const std::size_t dim = static_cast<std::size_t>(n);
  switch (kind) {
    case StructuredKind::Simplex: {
      std::vector<RatVec> pts(1, RatVec(dim, Rat(0)));
      for (int j = 0; j < n; ++j) {
        RatVec e(dim, Rat(0));
        e[static_cast<std::size_t>(j)] = 1;
        pts.push_back(std::move(e));
      }
      return ConvexBody::build(std::move(pts), n);
    }
    case StructuredKind::Cube: {
      std::vector<RatVec> pts;
      pts.reserve(std::size_t{1} << n);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        RatVec p(dim);
        for (int j = 0; j < n; ++j) {
          p[static_cast<std::size_t>(j)] = (mask >> j) & 1 ? 1 : 0;
        }
        pts.push_back(std::move(p));
      }
      return ConvexBody::build(std::move(pts), n);
    }
    case StructuredKind::CrossPolytope: {
      // centered at (1/2, ..., 1/2) so it stays in the positive orthant
      std::vector<RatVec> pts;
      for (int j = 0; j < n; ++j) {
        for (int sign : {-1, 1}) {
          RatVec p(dim, Rat(1, 2));
          p[static_cast<std::size_t>(j)] += Rat(sign, 2);
          pts.push_back(std::move(p));
        }
      }
      return ConvexBody::build(std::move(pts), n);
    }
    case StructuredKind::HalvedSimplex: {
      Rng rng(seed_stream);
      for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<RatVec> pts;
        for (int i = 0; i <= n; ++i) pts.push_back(dyadic_point(rng, n));
        try {
          const ConvexBody simplex = ConvexBody::build(std::move(pts), n);
          const Direction d = random_direction(rng, n);
          auto [lo, hi] = simplex.support(d);
          SliceSpec spec{d, (lo + hi) / 2,
                         (rng.bits() & 1) ? Side::Ge : Side::Le};
          auto half = clip(simplex, spec);
          if (half) return std::move(*half);
        } catch (const DegenerateBody&) {
          continue;
        }
      }
      throw GenerationExhausted("halved simplex generation failed");
    }
  }
  throw DomainError("unknown structured body kind");
}

ConvexBody gen_body(std::uint64_t seed_stream, int n, int v_count) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  if (v_count < n + 1) throw DomainError("need at least n+1 vertices");
  Rng rng(seed_stream);
  if (rng.unit() < 0.2) {
    const auto kind = static_cast<StructuredKind>(rng.range(0, 3));
    return structured_body(kind, n, rng.bits());
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<RatVec> pts;
    pts.reserve(static_cast<std::size_t>(v_count));
    for (int i = 0; i < v_count; ++i) pts.push_back(dyadic_point(rng, n));
    try {
      return ConvexBody::build(std::move(pts), n);
    } catch (const DegenerateBody&) {
      continue;
    }
  }
  throw GenerationExhausted("degenerate draws exhausted the retry budget");
}

ConcaveProfile gen_profile(std::uint64_t seed_stream) {
  Rng rng(seed_stream);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const int pieces = rng.range(1, 6);
    const double T = 0.5 + 2.5 * rng.unit();

    std::vector<double> breaks;
    breaks.push_back(0.0);
    for (int i = 0; i + 1 < pieces; ++i) breaks.push_back(T * rng.unit());
    breaks.push_back(T);
    std::sort(breaks.begin(), breaks.end());
    bool spaced = true;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      spaced = spaced && breaks[i + 1] - breaks[i] > 1e-6 * T;
    }
    if (!spaced) continue;

    std::vector<double> slopes(static_cast<std::size_t>(pieces));
    for (auto& s : slopes) s = 4.0 * rng.unit() - 2.0;
    std::sort(slopes.begin(), slopes.end(), std::greater<double>());

    std::vector<double> values;
    values.push_back(rng.unit());
    for (int i = 0; i < pieces; ++i) {
      values.push_back(values.back() +
                       slopes[static_cast<std::size_t>(i)] *
                           (breaks[static_cast<std::size_t>(i) + 1] -
                            breaks[static_cast<std::size_t>(i)]));
    }
    const double low = *std::min_element(values.begin(), values.end());
    if (low < 0) {
      for (auto& v : values) v -= low;
    }
    const double peak = *std::max_element(values.begin(), values.end());
    if (peak < 1e-9) {
      for (auto& v : values) v += 0.5;
    }
    return ConcaveProfile(std::move(breaks), std::move(values));
  }
  throw GenerationExhausted("profile generation failed");
}

// ---------------------------------------------------------------------------
// Suites

namespace {

constexpr std::uint64_t suite_salt(Suite s) {
  return 0x100 + static_cast<std::uint64_t>(s);
}

bool is_profile_suite(Suite s) {
  return s == Suite::FunctionalNh || s == Suite::WeightedNh;
}

void validate_config(const SuiteConfig& cfg, Suite which) {
  if (cfg.bodies < 1) throw DomainError("instance count must be positive");
  if (cfg.t_grid < 2 || cfg.tau_grid < 2) {
    throw DomainError("grids need at least two points");
  }
  if (!(cfg.tolerance > 0)) throw DomainError("tolerance must be positive");
  if (cfg.dims.empty()) throw DomainError("dims must be nonempty");
  const int lo = is_profile_suite(which) ? 1 : 2;
  for (int n : cfg.dims) {
    if (n < lo || n > 8) {
      throw DomainError("dims must lie in [" + std::to_string(lo) + ", 8]");
    }
  }
  if (cfg.vertices_per_body.first > 0 &&
      cfg.vertices_per_body.second < cfg.vertices_per_body.first) {
    throw DomainError("empty vertex count range");
  }
}

int pick_vertex_count(const SuiteConfig& cfg, Rng& rng, int n) {
  int lo = cfg.vertices_per_body.first;
  int hi = cfg.vertices_per_body.second;
  if (lo <= 0) {
    lo = n + 2;
    hi = n + 6;
  }
  lo = std::max(lo, n + 1);
  hi = std::max(hi, lo);
  return rng.range(lo, hi);
}

// Body suites run `bodies` random instances plus the deterministic
// structured catalog (4 bodies per dim).
int body_instance_count(const SuiteConfig& cfg) {
  return cfg.bodies + 4 * static_cast<int>(cfg.dims.size());
}

ConvexBody instance_body(const SuiteConfig& cfg, Suite suite, int index,
                         std::uint64_t& instance_hash) {
  const std::uint64_t s = mix_seed(cfg.seed, suite_salt(suite),
                                   static_cast<std::uint64_t>(index));
  instance_hash = s;
  if (index < cfg.bodies) {
    const int n = cfg.dims[static_cast<std::size_t>(index) % cfg.dims.size()];
    Rng rng(splitmix64(s));
    const int v = pick_vertex_count(cfg, rng, n);
    return gen_body(s, n, v);
  }
  const int tail = index - cfg.bodies;
  const int n = cfg.dims[static_cast<std::size_t>(tail / 4)];
  const auto kind = static_cast<StructuredKind>(tail % 4);
  return structured_body(kind, n, splitmix64(s));
}

SuiteResult gen_hammer_instance(const SuiteConfig& cfg, int index) {
  SuiteResult r;
  std::uint64_t h = 0;
  const ConvexBody body = instance_body(cfg, Suite::GenHammer, index, h);
  const int n = body.dim();
  const double expo = (static_cast<double>(n) + 1.0) / static_cast<double>(n);

  Rng dir_rng(splitmix64(h ^ 0x5EEDDA7AULL));
  const std::vector<Direction> dirs = {Direction::coordinate(0),
                                       random_direction(dir_rng, n)};

  for (std::size_t di = 0; di < dirs.size(); ++di) {
    const MomentCurve curve(body, dirs[di]);
    const Rat& lo = curve.min_value();
    const Rat& hi = curve.max_value();
    const Rat osc = hi - lo;
    const Rat& vol = curve.total_volume();
    const Rat mean = curve.total_moment() / vol;  // p(Bc K)
    const double osc_d = to_double(osc);
    const Rat band(1, 1000000);
    const Rat step = (Rat(1) - 2 * band) / Rat(cfg.t_grid - 1);

    std::vector<double> root(static_cast<std::size_t>(cfg.t_grid));
    std::vector<double> ts(static_cast<std::size_t>(cfg.t_grid));
    // evaluations are exact, so the difference width can sit far below the
    // grid scale; kinks between grid points then perturb w by O(1e-12)
    const Rat width = osc / Rat(BigInt("1000000000000"), BigInt(1));

    for (int g = 0; g < cfg.t_grid; ++g) {
      const Rat t = lo + osc * (band + step * Rat(g));
      const std::uint64_t tag = fnv1a_u64(static_cast<std::uint64_t>(g),
                                          fnv1a_u64(di, fnv1a_u64(h, kFnvOffset)));

      const Rat above = curve.volume_above(t);
      const Rat upper_mean = curve.upper_barycenter_value(t);
      const double tau_up = to_double(above / vol);
      const double lhs_up = to_double((upper_mean - lo) / (mean - lo));
      const double rhs_up = one_minus_pow(tau_up, expo) / tau_up;
      r.record("gen-hammer/upper", lhs_up - rhs_up, cfg.tolerance, hex64(tag));

      const Rat below = curve.volume_below(t);
      const Rat lower_mean = curve.lower_barycenter_value(t);
      const double tau_lo = to_double(below / vol);
      const double lhs_lo = to_double((hi - lower_mean) / (hi - mean));
      const double rhs_lo = one_minus_pow(tau_lo, expo) / tau_lo;
      r.record("gen-hammer/lower", lhs_lo - rhs_lo, cfg.tolerance,
               hex64(tag ^ 1));

      // cross-section width by central difference of the cumulative volume
      Rat a = t - width;
      Rat b = t + width;
      if (a < lo) a = lo;
      if (b > hi) b = hi;
      const double w =
          to_double((curve.volume_below(b) - curve.volume_below(a)) / (b - a));
      ts[static_cast<std::size_t>(g)] = to_double(t);
      root[static_cast<std::size_t>(g)] =
          n == 2 ? std::max(w, 0.0)
                 : std::pow(std::max(w, 0.0), 1.0 / (static_cast<double>(n) - 1.0));
    }

    // Brunn–Minkowski: the (n-1)-th root of the cross-section volume is
    // concave along the direction.
    for (int g = 1; g + 1 < cfg.t_grid; ++g) {
      const double frac = (ts[static_cast<std::size_t>(g)] - ts[static_cast<std::size_t>(g - 1)]) /
                          (ts[static_cast<std::size_t>(g + 1)] - ts[static_cast<std::size_t>(g - 1)]);
      const double lerp = root[static_cast<std::size_t>(g - 1)] +
                          frac * (root[static_cast<std::size_t>(g + 1)] -
                                  root[static_cast<std::size_t>(g - 1)]);
      const std::uint64_t tag =
          fnv1a_u64(static_cast<std::uint64_t>(g) | 0xB00000000ULL,
                    fnv1a_u64(di, fnv1a_u64(h, kFnvOffset)));
      r.record("gen-hammer/bm-concavity", root[static_cast<std::size_t>(g)] - lerp,
               cfg.tolerance, hex64(tag));
    }

    // Classical-bound recovery at the band edges: the sub-barycenter bound
    // degenerates to the n/(n+1) oscillation bound within 1e-4.
    {
      const Rat t = lo + osc * (Rat(1) - band);
      const Rat above = curve.volume_above(t);
      const double tau = to_double(above / vol);
      const double bound = to_double(curve.upper_barycenter_value(t) - lo) *
                           tau / one_minus_pow(tau, expo);
      const double classical = static_cast<double>(n) / (n + 1.0) * osc_d;
      r.record("gen-hammer/limit-upper", classical + 1e-4 - bound, cfg.tolerance,
               hex64(fnv1a_u64(di, fnv1a_u64(h, kFnvOffset)) ^ 0xA));
    }
    {
      const Rat t = lo + osc * band;
      const Rat below = curve.volume_below(t);
      const double tau = to_double(below / vol);
      const double bound = to_double(hi - curve.lower_barycenter_value(t)) *
                           tau / one_minus_pow(tau, expo);
      const double classical = static_cast<double>(n) / (n + 1.0) * osc_d;
      r.record("gen-hammer/limit-lower", classical + 1e-4 - bound, cfg.tolerance,
               hex64(fnv1a_u64(di, fnv1a_u64(h, kFnvOffset)) ^ 0xB));
    }
  }
  return r;
}

SuiteResult classical_nh_instance(const SuiteConfig& cfg, int index) {
  SuiteResult r;
  std::uint64_t h = 0;
  const ConvexBody body = instance_body(cfg, Suite::ClassicalNhLimits, index, h);
  const int n = body.dim();

  Rng dir_rng(splitmix64(h ^ 0xC1A551CA1ULL));
  const std::vector<Direction> dirs = {Direction::coordinate(0),
                                       random_direction(dir_rng, n)};
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    const auto [lo, hi] = body.support(dirs[di]);
    const Rat osc = hi - lo;
    const Rat gap = dirs[di].value(body.barycenter()) - lo;
    const std::string tag = hex64(fnv1a_u64(di, fnv1a_u64(h, kFnvOffset)));
    r.record("classical-nh/lower", exact_slack(gap - osc / Rat(n + 1)),
             cfg.tolerance, tag);
    r.record("classical-nh/upper",
             exact_slack(Rat(n) * osc / Rat(n + 1) - gap), cfg.tolerance, tag);
  }
  return r;
}

SuiteResult mass_balance_instance(const SuiteConfig& cfg, int index) {
  SuiteResult r;
  std::uint64_t h = 0;
  const ConvexBody body = instance_body(cfg, Suite::MassBalance, index, h);
  const int n = body.dim();

  Rng dir_rng(splitmix64(h ^ 0xBA1A4CEULL));
  const std::vector<Direction> dirs = {Direction::coordinate(0),
                                       random_direction(dir_rng, n)};
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    const Direction& d = dirs[di];
    const MomentCurve curve(body, d);
    const auto [lo, hi] = body.support(d);
    const Rat osc = hi - lo;

    Rat prev_above;
    bool have_prev = false;
    for (int j = 1; j <= 4; ++j) {
      const Rat t = lo + osc * Rat(j, 5);
      const std::string tag = hex64(fnv1a_u64(
          static_cast<std::uint64_t>(j), fnv1a_u64(di, fnv1a_u64(h, kFnvOffset))));

      const auto lower = clip(body, SliceSpec{d, t, Side::Le});
      const auto upper = clip(body, SliceSpec{d, t, Side::Ge});
      if (!lower || !upper) {
        r.record("mass-balance/partition", -1.0, cfg.tolerance, tag);
        continue;
      }

      r.record("mass-balance/partition",
               exact_zero_slack(lower->volume() + upper->volume() - body.volume()),
               cfg.tolerance, tag);

      Rat bary_gap = 0;
      for (int c = 0; c < n; ++c) {
        const Rat lhs = lower->volume() * lower->barycenter()[static_cast<std::size_t>(c)] +
                        upper->volume() * upper->barycenter()[static_cast<std::size_t>(c)];
        const Rat rhs = body.volume() * body.barycenter()[static_cast<std::size_t>(c)];
        if (lhs != rhs) bary_gap = 1;
      }
      r.record("mass-balance/barycenter", exact_zero_slack(bary_gap),
               cfg.tolerance, tag);

      // dual route: spline cumulative data against the clipped hull
      r.record("mass-balance/curve-vs-clip",
               exact_zero_slack(curve.volume_below(t) - lower->volume()),
               cfg.tolerance, tag);
      r.record("mass-balance/curve-moment-vs-clip",
               exact_zero_slack(curve.moment_below(t) -
                                lower->volume() * d.value(lower->barycenter())),
               cfg.tolerance, tag);

      const Rat above = curve.volume_above(t);
      if (have_prev) {
        r.record("mass-balance/monotone",
                 prev_above > above ? 0.0 : -1.0, cfg.tolerance, tag);
      }
      prev_above = above;
      have_prev = true;
    }
  }
  return r;
}

SuiteResult mc_oracle_instance(const SuiteConfig& cfg, int index) {
  SuiteResult r;
  std::uint64_t h = 0;
  const ConvexBody body = instance_body(cfg, Suite::McOracle, index, h);
  const double vol = to_double(body.volume());
  const McEstimate est = mc_volume_oracle(body, 100000, splitmix64(h ^ 0x31C0ULL));
  const double slack =
      4.0 * est.std_error + 1e-12 * (1.0 + vol) - std::fabs(est.estimate - vol);
  r.record("mc-oracle/4sigma", slack, cfg.tolerance, hex64(h));
  return r;
}

ValuationRecord fujita_candidate(const SuiteConfig& cfg, Suite suite, int index,
                                 std::uint64_t& instance_hash) {
  ConvexBody body = instance_body(cfg, suite, index, instance_hash);
  Rng rng(splitmix64(instance_hash ^ 0xF0F0ULL));
  if (rng.unit() < 0.5) {
    // translated Okounkov body: minimal vanishing order strictly positive
    RatVec shift(static_cast<std::size_t>(body.dim()), Rat(0));
    shift[0] = rng.dyadic_unit() + Rat(1, 16);
    body = body.translated(shift);
  }
  return ValuationRecord("cand-" + std::to_string(index), 1.0, std::move(body));
}

SuiteResult fujita_first_instance(const SuiteConfig& cfg, int index) {
  SuiteResult r;
  std::uint64_t h = 0;
  const ValuationRecord v = fujita_candidate(cfg, Suite::Fujita1, index, h);

  double prev_s = 0;
  double prev_tau = 0;
  bool have_prev = false;
  for (int g = 0; g < cfg.tau_grid; ++g) {
    const double tau = static_cast<double>(g) / (cfg.tau_grid - 1);
    const std::string tag =
        hex64(fnv1a_u64(static_cast<std::uint64_t>(g), fnv1a_u64(h, kFnvOffset)));
    const ComparisonCheck chk = check_fujita_first(v, tau);
    r.record("fujita-1/main", chk.slack, cfg.tolerance, tag);
    if (g + 1 == cfg.tau_grid) {
      r.record("fujita-1/tau1-exact", 1e-12 - std::fabs(chk.slack),
               cfg.tolerance, tag);
    }

    const double s = chk.value;  // S_tau (S_0 at tau = 0)
    if (have_prev) {
      r.record("fujita-1/s-nonincreasing", prev_s - s, cfg.tolerance, tag);
      r.record("fujita-1/tau-s-nondecreasing", tau * s - prev_tau * prev_s,
               cfg.tolerance, tag);
    }
    prev_s = s;
    prev_tau = tau;
    have_prev = true;
  }
  return r;
}

SuiteResult fujita_second_instance(const SuiteConfig& cfg, int index) {
  SuiteResult r;
  std::uint64_t h = 0;
  const ValuationRecord v = fujita_candidate(cfg, Suite::Fujita2, index, h);

  for (int g = 0; g < cfg.tau_grid; ++g) {
    const double tau = static_cast<double>(g) / (cfg.tau_grid - 1);
    const std::string tag =
        hex64(fnv1a_u64(static_cast<std::uint64_t>(g), fnv1a_u64(h, kFnvOffset)));
    const SecondComparisonCheck chk = check_fujita_second(v, tau);
    r.record("fujita-2/interp", chk.slack_interp, cfg.tolerance, tag);
    if (g == 0 || g + 1 == cfg.tau_grid) {
      r.record("fujita-2/endpoint-exact", 1e-12 - std::fabs(chk.slack_interp),
               cfg.tolerance, tag);
    }
    if (g == 0) {
      r.record("fujita-2/sigma-bound", chk.slack_endpoint, cfg.tolerance, tag);
    }
  }
  return r;
}

SuiteResult functional_nh_instance(const SuiteConfig& cfg, int index) {
  SuiteResult r;
  const std::uint64_t h = mix_seed(cfg.seed, suite_salt(Suite::FunctionalNh),
                                   static_cast<std::uint64_t>(index));
  const ConcaveProfile f = gen_profile(h);
  const double T = f.domain_length();

  for (int n : cfg.dims) {
    for (int g = 0; g < cfg.t_grid; ++g) {
      const double t = T * static_cast<double>(g) / (cfg.t_grid - 1);
      const std::string tag = hex64(fnv1a_u64(
          static_cast<std::uint64_t>(g),
          fnv1a_u64(static_cast<std::uint64_t>(n), fnv1a_u64(h, kFnvOffset))));

      const InequalityCheck chk = check_functional_nh(f, n, t);
      r.record("functional-nh/main", chk.slack, cfg.tolerance, tag);
      if (g == 0 || g + 1 == cfg.t_grid) {
        r.record("functional-nh/endpoint", 1e-12 - std::fabs(chk.slack),
                 cfg.tolerance, tag);
      }
      if (t > 0) {
        const ProofDiagnostics diag = proof_diagnostics(f, n, t);
        r.record("functional-nh/rescaled-gap", diag.rescaled_gap_min,
                 cfg.tolerance, tag);
        r.record("functional-nh/scaled-t", T - diag.scaled_t, cfg.tolerance,
                 tag);
      }
    }
  }
  return r;
}

SuiteResult weighted_nh_instance(const SuiteConfig& cfg, int index) {
  SuiteResult r;
  const std::uint64_t h = mix_seed(cfg.seed, suite_salt(Suite::WeightedNh),
                                   static_cast<std::uint64_t>(index));
  const ConcaveProfile f = gen_profile(h);
  const double T = f.domain_length();
  const double powers[] = {0.0, 0.5, 1.0, 2.0};

  for (int n : cfg.dims) {
    for (int g = 0; g < cfg.t_grid; ++g) {
      const double t = T * static_cast<double>(g) / (cfg.t_grid - 1);
      const InequalityCheck base = check_functional_nh(f, n, t);
      for (std::size_t pi = 0; pi < 4; ++pi) {
        const double p = powers[pi];
        const std::string tag = hex64(fnv1a_u64(
            static_cast<std::uint64_t>(g * 8) + pi,
            fnv1a_u64(static_cast<std::uint64_t>(n), fnv1a_u64(h, kFnvOffset))));
        const InequalityCheck chk = check_weighted_nh(f, n, p, t);
        r.record("weighted-nh/main", chk.slack, cfg.tolerance, tag);
        if (p == 0.0) {
          r.record("weighted-nh/p0-exact", 1e-12 - std::fabs(chk.slack),
                   cfg.tolerance, tag);
        }
        if (p == 1.0) {
          r.record("weighted-nh/p1-consistency",
                   1e-10 - std::fabs(chk.slack - base.slack), cfg.tolerance,
                   tag);
        }
      }
    }
  }
  return r;
}

template <typename Fn>
SuiteResult parallel_instances(int count, int threads, Fn&& fn) {
  std::vector<SuiteResult> frags(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, count);

  auto loop = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        frags[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  SuiteResult merged;
  for (const auto& frag : frags) merged.merge(frag);
  return merged;
}

}  // namespace

Suite suite_from_name(const std::string& name) {
  if (name == "gen-hammer") return Suite::GenHammer;
  if (name == "functional-nh") return Suite::FunctionalNh;
  if (name == "weighted-nh") return Suite::WeightedNh;
  if (name == "fujita-1") return Suite::Fujita1;
  if (name == "fujita-2") return Suite::Fujita2;
  if (name == "classical-nh-limits") return Suite::ClassicalNhLimits;
  if (name == "mass-balance") return Suite::MassBalance;
  if (name == "mc-oracle") return Suite::McOracle;
  if (name == "all") return Suite::All;
  throw DomainError("unknown suite '" + name + "'");
}

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::GenHammer: return "gen-hammer";
    case Suite::FunctionalNh: return "functional-nh";
    case Suite::WeightedNh: return "weighted-nh";
    case Suite::Fujita1: return "fujita-1";
    case Suite::Fujita2: return "fujita-2";
    case Suite::ClassicalNhLimits: return "classical-nh-limits";
    case Suite::MassBalance: return "mass-balance";
    case Suite::McOracle: return "mc-oracle";
    case Suite::All: return "all";
  }
  return "all";
}

std::vector<Suite> individual_suites() {
  return {Suite::GenHammer,         Suite::FunctionalNh, Suite::WeightedNh,
          Suite::Fujita1,           Suite::Fujita2,      Suite::ClassicalNhLimits,
          Suite::MassBalance,       Suite::McOracle};
}

SuiteResult run_suite(const SuiteConfig& config, Suite which) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult result;

  if (which == Suite::All) {
    validate_config(config, Suite::All);
    for (Suite s : individual_suites()) {
      result.merge(run_suite(config, s));
    }
  } else {
    validate_config(config, which);
    switch (which) {
      case Suite::GenHammer:
        result = parallel_instances(
            body_instance_count(config), config.threads,
            [&](int i) { return gen_hammer_instance(config, i); });
        break;
      case Suite::ClassicalNhLimits:
        result = parallel_instances(
            body_instance_count(config), config.threads,
            [&](int i) { return classical_nh_instance(config, i); });
        break;
      case Suite::MassBalance:
        result = parallel_instances(
            body_instance_count(config), config.threads,
            [&](int i) { return mass_balance_instance(config, i); });
        break;
      case Suite::McOracle:
        result = parallel_instances(
            std::min(config.bodies, 50), config.threads,
            [&](int i) { return mc_oracle_instance(config, i); });
        break;
      case Suite::Fujita1:
        result = parallel_instances(
            body_instance_count(config), config.threads,
            [&](int i) { return fujita_first_instance(config, i); });
        break;
      case Suite::Fujita2:
        result = parallel_instances(
            body_instance_count(config), config.threads,
            [&](int i) { return fujita_second_instance(config, i); });
        break;
      case Suite::FunctionalNh:
        result = parallel_instances(
            config.bodies, config.threads,
            [&](int i) { return functional_nh_instance(config, i); });
        break;
      case Suite::WeightedNh:
        result = parallel_instances(
            config.bodies, config.threads,
            [&](int i) { return weighted_nh_instance(config, i); });
        break;
      case Suite::All:
        break;
    }
  }

  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace subbary
