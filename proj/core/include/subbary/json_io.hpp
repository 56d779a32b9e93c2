#pragma once

#include <string>
#include <vector>

#include "subbary/convex_body.hpp"
#include "subbary/invariants.hpp"
#include "subbary/profile.hpp"

namespace subbary {

/// Decimal string with 15 significant digits; the serialization format for
/// every inexact number the tools emit.
std::string format_decimal(double x);

/// Body files: {"dim": n, "vertices": [["p/q", ...], ...]} with rational
/// entries as "p/q" strings or plain JSON numbers (floats convert exactly).
ConvexBody body_from_json_text(const std::string& text);
std::string body_to_json_text(const ConvexBody& body, bool exact);

/// Profile files: {"T": real, "breakpoints": [...], "values": [...]}.
ConcaveProfile profile_from_json_text(const std::string& text);

/// Valuation files: one record {"name", "A", "scale", "body"} or an array
/// of them (optionally wrapped as {"valuations": [...]}).
std::vector<ValuationRecord> valuations_from_json_text(
    const std::string& text, bool allow_zero_discrepancy = false);

/// Jumping data: {"k": int, "d_k": int, "j": [ascending reals]}.
JumpingData jumping_from_json_text(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace subbary
