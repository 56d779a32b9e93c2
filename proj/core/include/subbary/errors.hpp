#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subbary {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input set empty or too small to define a body.
struct EmptyInput : Error {
  using Error::Error;
};

// Affine hull of the input is not all of R^n.
struct DegenerateBody : Error {
  using Error::Error;
};

// Slice with zero volume where a body was required.
struct EmptySlice : Error {
  using Error::Error;
};

struct DimensionTooLow : Error {
  using Error::Error;
};

struct EmptyCandidates : Error {
  using Error::Error;
};

// Every candidate was skipped because its denominator invariant vanished.
struct UndefinedRatio : Error {
  using Error::Error;
};

struct GenerationExhausted : Error {
  using Error::Error;
};

// Argument outside its documented range (t, tau, m, ...).
struct DomainError : Error {
  using Error::Error;
};

// Malformed file or string input.
struct ParseError : Error {
  using Error::Error;
};

// Concavity validation failure; carries the first offending breakpoint.
struct ProfileNotConcave : ParseError {
  ProfileNotConcave(const std::string& what, std::size_t index)
      : ParseError(what), breakpoint_index(index) {}
  std::size_t breakpoint_index;
};

}  // namespace subbary
