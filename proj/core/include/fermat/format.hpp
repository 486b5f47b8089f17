#pragma once

#include <ostream>
#include <string>

#include "fermat/fermat_real.hpp"

namespace fermat {

inline std::string exponent_text(const Rational& e) {
  return "(" + mp::numerator(e).str() + "/" + mp::denominator(e).str() + ")";
}

// Canonical text: "3/2 + 2*t^(1/2) - t^(1/1)". A zero standard part is
// omitted when terms exist and unit coefficients print without "1*".
template <Scalar S>
std::string to_text(const FermatReal<S>& x) {
  std::string out;
  if (x.standard_part() != 0 || x.terms().empty()) out = ScalarTraits<S>::str(x.standard_part());
  for (const auto& term : x.terms()) {
    bool negative = term.coefficient < 0;
    S magnitude = abs_value(term.coefficient);
    std::string body;
    if (magnitude != 1) body = ScalarTraits<S>::str(magnitude) + "*";
    body += "t^" + exponent_text(term.exponent.value());
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

template <Scalar S>
std::ostream& operator<<(std::ostream& os, const FermatReal<S>& x) {
  return os << to_text(x);
}

}  // namespace fermat
