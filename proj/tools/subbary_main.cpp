// subbary: sub-barycenter, volume-quantile, and stability-invariant CLI.
//
// Subcommands: slice, invariants, profile-check, verify, eckardt.
// Exit codes: 0 success, 1 property violation found, 2 input/parse error,
// 3 domain error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subbary/convex_body.hpp"
#include "subbary/eckardt.hpp"
#include "subbary/invariants.hpp"
#include "subbary/json_io.hpp"
#include "subbary/moment_curve.hpp"
#include "subbary/profile.hpp"
#include "subbary/verifier.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace subbary;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUBBARY_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError("SUBBARY_SEED must be an unsigned integer");
    }
  }
  return 42;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    write_file(out_path, text.empty() || text.back() == '\n' ? text
                                                             : text + "\n");
  }
}

json meta_block(std::chrono::steady_clock::time_point start) {
  json meta;
  meta["runtime_seconds"] = format_decimal(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count());
  return meta;
}

Direction parse_direction(int axis, const std::string& vector_spec, int dim) {
  if (!vector_spec.empty()) {
    RatVec v;
    std::stringstream ss(vector_spec);
    std::string part;
    while (std::getline(ss, part, ',')) v.push_back(rat_from_string(part));
    if (static_cast<int>(v.size()) != dim) {
      throw ParseError("direction vector has wrong dimension");
    }
    return Direction::vector(std::move(v));
  }
  if (axis < 1 || axis > dim) {
    throw DomainError("axis must lie in 1.." + std::to_string(dim));
  }
  return Direction::coordinate(axis - 1);
}

std::string rat_field(const Rat& q, bool exact) {
  return exact ? rat_to_string(q) : format_decimal(to_double(q));
}

// ---------------------------------------------------------------------------

int cmd_slice(const std::string& body_path, int axis,
              const std::string& vector_spec, const std::string& t_text,
              const std::string& side_name, bool exact, bool no_meta,
              const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  const ConvexBody body = body_from_json_text(read_file(body_path));
  const Direction dir = parse_direction(axis, vector_spec, body.dim());
  const Rat t = rat_from_string(t_text);
  const Side side = side_name == "le" ? Side::Le : Side::Ge;

  const auto [lo, hi] = body.support(dir);
  if (t < lo || t > hi) {
    throw DomainError("t outside support [" + rat_to_string(lo) + ", " +
                      rat_to_string(hi) + "]");
  }

  const auto slice = clip(body, SliceSpec{dir, t, side});
  if (!slice) throw EmptySlice("slice has zero volume at t = " + t_text);

  const auto upper = clip(body, SliceSpec{dir, t, Side::Ge});
  const Rat upper_volume = upper ? upper->volume() : Rat(0);

  json out;
  out["t"] = rat_field(t, exact);
  out["side"] = side == Side::Le ? "le" : "ge";
  out["volume"] = rat_field(slice->volume(), exact);
  json bc = json::array();
  for (const auto& c : slice->barycenter()) bc.push_back(rat_field(c, exact));
  out["barycenter"] = std::move(bc);
  out["p_barycenter"] = rat_field(dir.value(slice->barycenter()), exact);
  out["tau_ge"] = rat_field(upper_volume / body.volume(), exact);
  out["body_volume"] = rat_field(body.volume(), exact);
  if (!no_meta) out["meta"] = meta_block(start);

  emit(out.dump(2), out_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------

std::vector<double> parse_tau_spec(const std::string& spec) {
  if (spec.rfind("grid:", 0) == 0) {
    int count = 0;
    try {
      count = std::stoi(spec.substr(5));
    } catch (const std::exception&) {
      throw ParseError("malformed --tau grid spec '" + spec + "'");
    }
    if (count < 2) throw DomainError("tau grid needs at least two points");
    std::vector<double> taus(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      taus[static_cast<std::size_t>(i)] = static_cast<double>(i) / (count - 1);
    }
    return taus;
  }
  try {
    std::size_t used = 0;
    const double tau = std::stod(spec, &used);
    if (used != spec.size()) throw std::invalid_argument(spec);
    return {tau};
  } catch (const std::exception&) {
    throw ParseError("malformed --tau value '" + spec + "'");
  }
}

int cmd_invariants(const std::string& valuations_path,
                   const std::string& tau_spec, int n_flag, bool allow_zero,
                   const std::string& emit_format, bool no_meta,
                   const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<ValuationRecord> candidates =
      valuations_from_json_text(read_file(valuations_path), allow_zero);

  const int n = candidates.front().dim();
  for (const auto& v : candidates) {
    if (v.dim() != n) throw DomainError("valuations must share one dimension");
  }
  if (n_flag > 0 && n_flag != n) {
    throw DomainError("--n disagrees with the Okounkov bodies' dimension");
  }

  const std::vector<double> taus = parse_tau_spec(tau_spec);

  std::vector<StabilityReport> reports;
  reports.reserve(taus.size());
  for (double tau : taus) reports.push_back(stability_report(candidates, tau));

  for (const auto& report : reports) {
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  }

  std::string text;
  if (emit_format == "csv") {
    std::ostringstream csv;
    if (!no_meta) csv << "# subbary invariants report\n";
    csv << "tau,n,delta_tau,delta_tilde_tau,threshold,weak_threshold,verdict,"
           "argmin\n";
    for (const auto& r : reports) {
      csv << format_decimal(r.tau) << ',' << r.n << ','
          << format_decimal(r.delta) << ',' << format_decimal(r.delta_tilde)
          << ',' << format_decimal(r.threshold) << ','
          << format_decimal(r.weak_threshold) << ',' << verdict_name(r.verdict)
          << ',' << r.argmin << '\n';
    }
    text = csv.str();
  } else {
    json rows = json::array();
    for (const auto& r : reports) {
      json row;
      row["tau"] = format_decimal(r.tau);
      row["n"] = r.n;
      row["delta_tau"] = format_decimal(r.delta);
      row["delta_tilde_tau"] = format_decimal(r.delta_tilde);
      if (r.tau == 0.0) row["alpha_tilde"] = format_decimal(r.delta_tilde);
      row["threshold"] = format_decimal(r.threshold);
      row["weak_threshold"] = format_decimal(r.weak_threshold);
      row["verdict"] = verdict_name(r.verdict);
      row["meets_weak"] = r.meets_weak;
      row["argmin"] = r.argmin;
      rows.push_back(std::move(row));
    }
    json out;
    out["n"] = n;
    out["reports"] = std::move(rows);
    if (!no_meta) out["meta"] = meta_block(start);
    text = out.dump(2);
  }
  emit(text, out_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_profile_check(const std::string& profile_path, int random_count,
                      int n, double p, int t_grid, std::uint64_t seed,
                      const std::string& emit_format, bool no_meta,
                      const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  if (n < 1) throw DomainError("--n must be at least 1");
  if (t_grid < 2) throw DomainError("--t-grid needs at least two points");

  std::vector<ConcaveProfile> profiles;
  if (!profile_path.empty()) {
    profiles.push_back(profile_from_json_text(read_file(profile_path)));
  } else if (random_count > 0) {
    for (int i = 0; i < random_count; ++i) {
      profiles.push_back(gen_profile(seed + static_cast<std::uint64_t>(i)));
    }
  } else {
    throw ParseError("pass --profile FILE or --random N");
  }

  bool violation = false;
  json rows = json::array();
  std::ostringstream csv;
  if (!no_meta) csv << "# subbary profile-check report\n";
  csv << "profile,n,p,t,lhs,rhs,slack\n";

  for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
    const ConcaveProfile& f = profiles[pi];
    const double T = f.domain_length();
    for (int g = 0; g < t_grid; ++g) {
      const double t = T * static_cast<double>(g) / (t_grid - 1);
      const InequalityCheck chk = check_weighted_nh(f, n, p, t);
      violation = violation || chk.slack < -1e-9;
      if (emit_format == "csv") {
        csv << pi << ',' << n << ',' << format_decimal(p) << ','
            << format_decimal(t) << ',' << format_decimal(chk.lhs) << ','
            << format_decimal(chk.rhs) << ',' << format_decimal(chk.slack)
            << '\n';
      } else {
        json row;
        row["profile"] = pi;
        row["n"] = n;
        row["p"] = format_decimal(p);
        row["t"] = format_decimal(t);
        row["lhs"] = format_decimal(chk.lhs);
        row["rhs"] = format_decimal(chk.rhs);
        row["slack"] = format_decimal(chk.slack);
        rows.push_back(std::move(row));
      }
    }
  }

  std::string text;
  if (emit_format == "csv") {
    text = csv.str();
  } else {
    json out;
    out["rows"] = std::move(rows);
    out["violation"] = violation;
    if (!no_meta) out["meta"] = meta_block(start);
    text = out.dump(2);
  }
  emit(text, out_path);
  return violation ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite_spec, SuiteConfig config,
               const std::string& report_path, bool no_meta) {
  const Suite suite = suite_from_name(suite_spec);
  const SuiteResult result = run_suite(config, suite);

  json out;
  json cfg;
  cfg["seed"] = config.seed;
  cfg["bodies"] = config.bodies;
  cfg["dims"] = config.dims;
  cfg["t_grid"] = config.t_grid;
  cfg["tau_grid"] = config.tau_grid;
  cfg["tolerance"] = format_decimal(config.tolerance);
  out["suite"] = suite_name(suite);
  out["config"] = std::move(cfg);

  json checks = json::array();
  for (const auto& [name, runs] : result.checks_run) {
    json check;
    check["name"] = name;
    check["runs"] = runs;
    check["min_slack"] = format_decimal(result.min_slack.at(name));
    checks.push_back(std::move(check));
  }
  out["checks"] = std::move(checks);

  json violations = json::array();
  for (const auto& v : result.violations) {
    json item;
    item["check"] = v.check;
    item["inputs_digest"] = v.inputs_digest;
    item["slack"] = format_decimal(v.slack);
    violations.push_back(std::move(item));
  }
  out["violations"] = std::move(violations);

  char digest_text[32];
  std::snprintf(digest_text, sizeof(digest_text), "%016llx",
                static_cast<unsigned long long>(result.digest()));
  out["digest"] = digest_text;
  if (!no_meta) {
    json meta;
    meta["runtime_seconds"] = format_decimal(result.runtime_seconds);
    out["meta"] = std::move(meta);
  }

  const std::string text = out.dump(2);
  if (!report_path.empty()) {
    write_file(report_path, text + "\n");
  }

  std::cout << "suite " << suite_name(suite) << ": "
            << result.violations.size() << " violation(s), digest "
            << digest_text << "\n";
  for (const auto& [name, runs] : result.checks_run) {
    std::cout << "  " << name << ": runs=" << runs
              << " min_slack=" << format_decimal(result.min_slack.at(name))
              << "\n";
  }
  return result.violations.empty() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

int cmd_eckardt(int samples, int cross_validate_grid,
                const std::string& emit_format, bool no_meta,
                const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();

  if (cross_validate_grid > 0) {
    const double err = eckardt::cross_validate(cross_validate_grid);
    const auto scan = eckardt::verify_stability(cross_validate_grid);
    json out;
    out["max_abs_error"] = format_decimal(err);
    out["min_margin"] = format_decimal(scan.min_margin);
    out["argmin_tau"] = format_decimal(scan.argmin_tau);
    if (!no_meta) out["meta"] = meta_block(start);
    emit(out.dump(2), out_path);
    return kExitOk;
  }

  const auto rows = eckardt::figure2_table(samples);
  std::string text;
  if (emit_format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json row;
      row["tau"] = format_decimal(r.tau);
      row["ratio"] = format_decimal(r.ratio);
      row["threshold"] = format_decimal(r.threshold);
      row["margin"] = format_decimal(r.margin);
      arr.push_back(std::move(row));
    }
    json out;
    out["rows"] = std::move(arr);
    if (!no_meta) out["meta"] = meta_block(start);
    text = out.dump(2);
  } else {
    std::ostringstream csv;
    if (!no_meta) csv << "# subbary eckardt table\n";
    csv << "tau,ratio,threshold,margin\n";
    for (const auto& r : rows) {
      csv << format_decimal(r.tau) << ',' << format_decimal(r.ratio) << ','
          << format_decimal(r.threshold) << ',' << format_decimal(r.margin)
          << '\n';
    }
    text = csv.str();
  }
  emit(text, out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sub-barycenters, volume quantiles, and stability invariants"};
  app.require_subcommand(1);

  // slice
  auto* slice = app.add_subcommand("slice", "half-space slice report");
  std::string slice_body, slice_vector, slice_t = "0", slice_side = "ge";
  std::string slice_out;
  int slice_axis = 1;
  bool slice_exact = false, slice_no_meta = false;
  slice->add_option("--body", slice_body, "body JSON file")->required();
  slice->add_option("--axis", slice_axis, "1-based coordinate axis");
  slice->add_option("--direction", slice_vector,
                    "comma-separated rational direction (overrides --axis)");
  slice->add_option("--t", slice_t, "threshold (rational or decimal)")
      ->required();
  slice->add_option("--side", slice_side, "ge or le")
      ->check(CLI::IsMember({"ge", "le"}));
  slice->add_flag("--exact", slice_exact, "emit exact rationals p/q");
  slice->add_flag("--no-meta", slice_no_meta, "omit runtime metadata");
  slice->add_option("--out", slice_out, "write report here instead of stdout");

  // invariants
  auto* inv = app.add_subcommand("invariants", "stability reports over tau");
  std::string inv_file, inv_tau = "grid:5", inv_emit = "json", inv_out;
  int inv_n = 0;
  bool inv_allow_zero = false, inv_no_meta = false;
  inv->add_option("--valuations", inv_file, "valuation JSON file")->required();
  inv->add_option("--tau", inv_tau, "single value or grid:N");
  inv->add_option("--n", inv_n, "expected dimension (validated)");
  inv->add_flag("--allow-zero-discrepancy", inv_allow_zero,
                "admit A = 0 records");
  inv->add_option("--emit", inv_emit, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  inv->add_flag("--no-meta", inv_no_meta, "omit runtime metadata");
  inv->add_option("--out", inv_out, "write report here instead of stdout");

  // profile-check
  auto* prof = app.add_subcommand("profile-check",
                                  "tail-mass inequality slack table");
  std::string prof_file, prof_emit = "json", prof_out;
  int prof_random = 0, prof_n = 2, prof_grid = 64;
  double prof_p = 1.0;
  std::uint64_t prof_seed = 0;
  bool prof_no_meta = false;
  prof->add_option("--profile", prof_file, "profile JSON file");
  prof->add_option("--random", prof_random, "check N random profiles");
  prof->add_option("--n", prof_n, "dimension parameter")->required();
  prof->add_option("--p", prof_p, "weight exponent (default 1)");
  prof->add_option("--t-grid", prof_grid, "number of t samples");
  auto* prof_seed_opt = prof->add_option("--seed", prof_seed, "seed for --random");
  prof->add_option("--emit", prof_emit, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  prof->add_flag("--no-meta", prof_no_meta, "omit runtime metadata");
  prof->add_option("--out", prof_out, "write report here instead of stdout");

  // verify
  auto* ver = app.add_subcommand("verify", "randomized property suites");
  std::string ver_suite = "all", ver_report;
  SuiteConfig ver_cfg;
  std::vector<int> ver_dims;
  std::uint64_t ver_seed = 0;
  bool ver_no_meta = false;
  ver->add_option("--suite", ver_suite,
                  "gen-hammer | functional-nh | weighted-nh | fujita-1 | "
                  "fujita-2 | classical-nh-limits | mass-balance | mc-oracle "
                  "| all");
  ver->add_option("--bodies", ver_cfg.bodies, "instances per suite");
  ver->add_option("--dims", ver_dims, "dimensions (comma separated)")
      ->delimiter(',');
  ver->add_option("--t-grid", ver_cfg.t_grid, "t samples per body");
  ver->add_option("--tau-grid", ver_cfg.tau_grid, "tau samples per body");
  ver->add_option("--tolerance", ver_cfg.tolerance, "violation tolerance");
  ver->add_option("--threads", ver_cfg.threads, "worker threads (0 = auto)");
  auto* ver_seed_opt = ver->add_option("--seed", ver_seed, "suite seed");
  ver->add_option("--report", ver_report, "write the JSON report here");
  ver->add_flag("--no-meta", ver_no_meta, "omit runtime metadata");

  // eckardt
  auto* eck = app.add_subcommand("eckardt",
                                 "cubic-surface reference curves and checks");
  std::string eck_emit = "csv", eck_out;
  int eck_samples = 1001, eck_cross = 0;
  bool eck_no_meta = false;
  eck->add_option("--samples", eck_samples, "table rows");
  eck->add_option("--emit", eck_emit, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  eck->add_option("--cross-validate", eck_cross,
                  "run the generic-pipeline comparison on an N-point grid");
  eck->add_flag("--no-meta", eck_no_meta, "omit runtime metadata");
  eck->add_option("--out", eck_out, "write output here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (slice->parsed()) {
      return cmd_slice(slice_body, slice_axis, slice_vector, slice_t,
                       slice_side, slice_exact, slice_no_meta, slice_out);
    }
    if (inv->parsed()) {
      return cmd_invariants(inv_file, inv_tau, inv_n, inv_allow_zero, inv_emit,
                            inv_no_meta, inv_out);
    }
    if (prof->parsed()) {
      const std::uint64_t seed =
          prof_seed_opt->count() > 0 ? prof_seed : default_seed();
      return cmd_profile_check(prof_file, prof_random, prof_n, prof_p,
                               prof_grid, seed, prof_emit, prof_no_meta,
                               prof_out);
    }
    if (ver->parsed()) {
      ver_cfg.seed = ver_seed_opt->count() > 0 ? ver_seed : default_seed();
      if (!ver_dims.empty()) ver_cfg.dims = ver_dims;
      return cmd_verify(ver_suite, ver_cfg, ver_report, ver_no_meta);
    }
    if (eck->parsed()) {
      return cmd_eckardt(eck_samples, eck_cross, eck_emit, eck_no_meta,
                         eck_out);
    }
  } catch (const ProfileNotConcave& e) {
    std::cerr << "error: malformed profile: " << e.what() << " (breakpoint "
              << e.breakpoint_index << ")\n";
    return kExitParse;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
