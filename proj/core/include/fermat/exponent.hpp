#pragma once

#include "fermat/scalar.hpp"

namespace fermat {

// Exact rational in (0, 1].
class Exponent {
 public:
  explicit Exponent(Rational value) : value_(std::move(value)) {
    if (value_ <= 0 || value_ > 1) {
      fail(ErrorCode::invalid_argument, "exponent " + to_string(value_) + " outside (0, 1]");
    }
  }

  const Rational& value() const noexcept { return value_; }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.value_ == b.value_; }
  friend bool operator<(const Exponent& a, const Exponent& b) { return a.value_ < b.value_; }
  friend bool operator>(const Exponent& a, const Exponent& b) { return b < a; }
  friend bool operator<=(const Exponent& a, const Exponent& b) { return !(b < a); }
  friend bool operator>=(const Exponent& a, const Exponent& b) { return !(a < b); }

 private:
  Rational value_;
};

}  // namespace fermat
