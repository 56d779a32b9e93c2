#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace subbary {

// Exact arbitrary-precision rational; all polytope geometry runs on it.
using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
using RatVec = std::vector<Rat>;

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

// Every finite double is a dyadic rational, so this conversion is exact.
Rat rat_from_double(double x);

// Accepts "p", "p/q", and an optional leading sign. The mpq string
// constructor does not canonicalize, so parsing goes through the
// numerator/denominator constructor which does.
Rat rat_from_string(const std::string& text);

std::string rat_to_string(const Rat& q);

}  // namespace subbary
