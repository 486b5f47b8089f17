#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/fermat.hpp"

namespace fermat::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& message)
      : std::runtime_error(message), position_(position), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

struct Expr {
  enum class Kind { number, generator, variable, negate, add, sub, mul, power, call };

  Kind kind = Kind::number;
  Rational value;    // literal value, or the exponent of a power
  std::string name;  // variable or function name
  std::vector<Expr> args;
  std::size_t position = 0;
};

inline constexpr unsigned max_integer_power = 1000;
inline constexpr std::size_t max_nesting = 200;

Expr parse_expression(std::string_view text);

// Prefix rendering, e.g. (+ 3/2 (* 2 (^ t 1/2))).
std::string to_sexpr(const Expr& e);

std::set<std::string> variables(const Expr& e);

// Polynomial over the listed variables; t and function calls are rejected.
MultiPoly to_multipoly(const Expr& e, const std::vector<std::string>& vars);

template <Scalar S>
Oracle<S> named_function(std::string_view name) {
  if (name == "sin") return elementary_oracle<S>(Elementary::sin);
  if (name == "cos") return elementary_oracle<S>(Elementary::cos);
  if (name == "exp") return elementary_oracle<S>(Elementary::exp);
  if (name == "log") return elementary_oracle<S>(Elementary::log);
  if (name == "flat_exp") return flat_exp_oracle<S>();
  fail(ErrorCode::unknown_name, "unknown function '" + std::string(name) + "'");
}

inline constexpr std::size_t max_coefficient_bits = std::size_t{1} << 20;

namespace detail {

inline std::size_t bits(const Rational& q) {
  auto size = [](const BigInt& n) { return n == 0 ? std::size_t{0} : mpz_sizeinbase(n.backend().data(), 2); };
  return size(mp::numerator(q)) + size(mp::denominator(q));
}

template <Scalar S>
void check_power_size(const FermatReal<S>& base, std::uint64_t n) {
  if constexpr (ScalarTraits<S>::exact) {
    std::size_t widest = bits(base.standard_part());
    for (const auto& term : base.terms()) widest = std::max(widest, bits(term.coefficient));
    if (widest > 2 && widest * n > max_coefficient_bits) {
      fail(ErrorCode::invalid_argument, "power result exceeds " + std::to_string(max_coefficient_bits) + " bits");
    }
  }
}

}  // namespace detail

template <Scalar S>
FermatReal<S> evaluate(const Expr& e) {
  using FR = FermatReal<S>;
  switch (e.kind) {
    case Expr::Kind::number: return FR(from_rational<S>(e.value));
    case Expr::Kind::generator: return FR::t();
    case Expr::Kind::variable:
      fail(ErrorCode::unknown_name, "unbound variable '" + e.name + "'");
    case Expr::Kind::negate: return -evaluate<S>(e.args[0]);
    case Expr::Kind::add: return evaluate<S>(e.args[0]) + evaluate<S>(e.args[1]);
    case Expr::Kind::sub: return evaluate<S>(e.args[0]) - evaluate<S>(e.args[1]);
    case Expr::Kind::mul: return evaluate<S>(e.args[0]) * evaluate<S>(e.args[1]);
    case Expr::Kind::power:
      if (e.args[0].kind == Expr::Kind::generator) return FR::monomial(S(1), e.value);
    {
      FR base = evaluate<S>(e.args[0]);
      auto n = mp::numerator(e.value).template convert_to<std::uint64_t>();
      detail::check_power_size(base, n);
      return pow_nat(base, n);
    }
    case Expr::Kind::call: return fermat_extend(*named_function<S>(e.name), evaluate<S>(e.args[0]));
  }
  fail(ErrorCode::invalid_argument, "malformed expression");
}

// Oracle descriptors: poly:[c0,c1,...], powint:n, sin, cos, exp, log, flat_exp.
std::vector<Rational> parse_poly_descriptor(std::string_view body);

template <Scalar S>
Oracle<S> parse_oracle(std::string_view descriptor) {
  if (descriptor.starts_with("poly:")) {
    return polynomial_oracle<S>(parse_poly_descriptor(descriptor.substr(5)));
  }
  if (descriptor.starts_with("powint:")) {
    std::string_view digits = descriptor.substr(7);
    if (digits.empty() || digits.size() > 4 ||
        digits.find_first_not_of("0123456789") != std::string_view::npos) {
      throw ParseError(7, {"integer"}, "powint expects a nonnegative integer up to 9999");
    }
    return powint_oracle<S>(static_cast<unsigned>(std::stoul(std::string(digits))));
  }
  return named_function<S>(descriptor);
}

}  // namespace fermat::cli
