#include "subbary/rational.hpp"

#include "subbary/errors.hpp"

namespace subbary {

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("cannot convert non-finite double to rational");
  }
  return Rat(x);
}

Rat rat_from_string(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(BigInt(text), BigInt(1));
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rat(num, den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("malformed rational literal '" + text + "'");
  }
}

std::string rat_to_string(const Rat& q) { return q.str(); }

}  // namespace subbary
