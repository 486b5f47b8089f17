#pragma once

#include <boost/math/constants/constants.hpp>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fermat/roots.hpp"
#include "fermat/smooth_ext.hpp"

namespace fermat {

namespace detail {

template <Scalar S>
void check_same_length(std::size_t a, std::size_t b) {
  if (a != b) fail(ErrorCode::invalid_argument, "vectors differ in length");
}

template <Scalar S>
S checked_sqrt(const S& x) {
  std::optional<S> r = ScalarTraits<S>::sqrt(x);
  if (!r) {
    fail(ErrorCode::exact_backend_root_needed, "square root of " + ScalarTraits<S>::str(x) + " is irrational");
  }
  return *r;
}

}  // namespace detail

// ‖°x − °y‖ + Σ ω(xᵢ − yᵢ).
template <Scalar S>
S d_omega(std::span<const FermatReal<S>> x, std::span<const FermatReal<S>> y) {
  detail::check_same_length<S>(x.size(), y.size());
  S sq(0);
  Rational omega(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    FermatReal<S> d = x[i] - y[i];
    sq += d.standard_part() * d.standard_part();
    omega += order_omega(d);
  }
  return detail::checked_sqrt(sq) + from_rational<S>(omega);
}

template <Scalar S>
S d_omega(const FermatReal<S>& x, const FermatReal<S>& y) {
  return abs_value(S(x.standard_part() - y.standard_part())) + from_rational<S>(order_omega(x - y));
}

// ⟨°x, °y⟩ plus the products of coefficients at matching exponents.
template <Scalar S>
S euclid_inner(const FermatReal<S>& x, const FermatReal<S>& y) {
  S acc = x.standard_part() * y.standard_part();
  const auto& xs = x.terms();
  const auto& ys = y.terms();
  std::size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    if (xs[i].exponent < ys[j].exponent) {
      ++i;
    } else if (ys[j].exponent < xs[i].exponent) {
      ++j;
    } else {
      acc += xs[i++].coefficient * ys[j++].coefficient;
    }
  }
  return acc;
}

template <Scalar S>
S euclid_inner(std::span<const FermatReal<S>> x, std::span<const FermatReal<S>> y) {
  detail::check_same_length<S>(x.size(), y.size());
  S acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += euclid_inner(x[i], y[i]);
  return acc;
}

template <Scalar S>
S euclid_norm_sq(const FermatReal<S>& x) {
  return euclid_inner(x, x);
}

template <Scalar S>
S euclid_norm_sq(std::span<const FermatReal<S>> x) {
  return euclid_inner(x, x);
}

template <Scalar S>
S euclid_norm(const FermatReal<S>& x) {
  return detail::checked_sqrt(euclid_norm_sq(x));
}

template <Scalar S>
S euclid_norm(std::span<const FermatReal<S>> x) {
  return detail::checked_sqrt(euclid_norm_sq(x));
}

template <Scalar S>
bool in_order_interval(const FermatReal<S>& x, const FermatReal<S>& lo, const FermatReal<S>& hi) {
  return lo < x && x < hi;
}

// °x lies in the union of the given open intervals.
template <Scalar S>
bool in_fermat_open(const FermatReal<S>& x, std::span<const RealInterval> open_set) {
  Rational s = ScalarTraits<S>::to_rational(x.standard_part());
  for (const auto& interval : open_set) {
    if (interval.contains(s)) return true;
  }
  return false;
}

template <Scalar S>
struct SequencePrefix {
  std::string generator;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<FermatReal<S>> values;
};

template <Scalar S>
struct CharacterizedWith {
  std::size_t index;   // N, 1-based
  std::vector<S> tail;  // b_n for n = N+1, ..., len
};

struct NotCharacterizedInPrefix {};

template <Scalar S>
using ConvergenceVerdict = std::variant<CharacterizedWith<S>, NotCharacterizedInPrefix>;

namespace detail {

template <Scalar S, class Extract>
ConvergenceVerdict<S> decompose(const SequencePrefix<S>& s, Extract&& extract) {
  const auto& a = s.values;
  if (a.empty()) fail(ErrorCode::invalid_argument, "sequence prefix is empty");
  if (a.size() == 1) return CharacterizedWith<S>{1, {}};
  for (std::size_t n = 0; n + 1 < a.size(); ++n) {
    std::vector<S> tail;
    bool ok = true;
    for (std::size_t k = n + 1; k < a.size() && ok; ++k) {
      std::optional<S> b = extract(a[k] - a[n]);
      if (b) {
        tail.push_back(*b);
      } else {
        ok = false;
      }
    }
    if (ok) return CharacterizedWith<S>{n + 1, std::move(tail)};
  }
  return NotCharacterizedInPrefix{};
}

}  // namespace detail

// Least N with a_n − a_N real for every later n.
template <Scalar S>
ConvergenceVerdict<S> omega_limit_decompose(const SequencePrefix<S>& s) {
  return detail::decompose(s, [](const FermatReal<S>& d) -> std::optional<S> {
    if (!d.is_real()) return std::nullopt;
    return d.standard_part();
  });
}

// Least N with a_n − a_N = b_n·t for every later n.
template <Scalar S>
ConvergenceVerdict<S> order_limit_decompose(const SequencePrefix<S>& s) {
  return detail::decompose(s, [](const FermatReal<S>& d) -> std::optional<S> {
    if (d.standard_part() != 0) return std::nullopt;
    if (d.terms().empty()) return S(0);
    if (d.terms().size() != 1 || d.terms().front().exponent.value() != 1) return std::nullopt;
    return d.terms().front().coefficient;
  });
}

enum class Metric { omega, euclid };

template <Scalar S>
struct ScheduleEntry {
  std::size_t index;  // 1-based
  S bound;
};

// Every pair of entries at or beyond each scheduled index is closer than its bound.
template <Scalar S>
bool cauchy_check_prefix(const SequencePrefix<S>& s, Metric metric, std::span<const ScheduleEntry<S>> schedule) {
  const auto& a = s.values;
  for (const auto& entry : schedule) {
    if (entry.index < 1 || entry.index > a.size()) {
      fail(ErrorCode::invalid_argument, "schedule index " + std::to_string(entry.index) + " outside the prefix");
    }
    for (std::size_t i = entry.index - 1; i < a.size(); ++i) {
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        bool close = metric == Metric::omega ? d_omega(a[i], a[j]) < entry.bound
                                             : euclid_norm_sq(a[j] - a[i]) < entry.bound * entry.bound;
        if (!close) return false;
      }
    }
  }
  return true;
}

template <Scalar S>
struct CounterexampleParams {
  std::size_t n = 8;
  S delta = S(1);
  std::vector<FermatReal<S>> deltas;       // lebesgue_partial_integrals, default t^{1/i}
  std::optional<FermatReal<S>> point;      // power_at_one_plus_t: ε; sin_over_n_slice: x
};

inline constexpr std::array<std::string_view, 6> counterexample_names = {
    "euclid_cauchy_divergent", "mult_norm_blowup",          "mult_norm_blowup_progression",
    "power_at_one_plus_t",     "sin_over_n_slice",          "lebesgue_partial_integrals",
};

namespace detail {

template <Scalar S>
FermatReal<S> scaled_sum(const S& scale, const std::vector<Rational>& exponents) {
  std::vector<typename FermatReal<S>::RawTerm> raw;
  for (const auto& e : exponents) raw.push_back({e, scale});
  return FermatReal<S>::normalize(S(0), std::move(raw));
}

template <Scalar S>
void require_float(std::string_view name) {
  if constexpr (ScalarTraits<S>::exact) {
    fail(ErrorCode::not_representable, std::string(name) + " needs the float backend");
  }
}

}  // namespace detail

template <Scalar S>
SequencePrefix<S> make_counterexample(std::string_view name, const CounterexampleParams<S>& params = {}) {
  using FR = FermatReal<S>;
  SequencePrefix<S> out{std::string(name), {{"n", std::to_string(params.n)}}, {}};
  if (params.n == 0) fail(ErrorCode::invalid_argument, "prefix length must be positive");
  const std::size_t n = params.n;

  if (name == "euclid_cauchy_divergent") {
    FR a;
    for (std::size_t i = 1; i <= n; ++i) {
      a += FR::monomial(from_rational<S>(1 / factorial(static_cast<unsigned>(i))), Rational(1, i));
      out.values.push_back(a);
    }
  } else if (name == "mult_norm_blowup" || name == "mult_norm_blowup_progression") {
    detail::require_float<S>(name);
    if constexpr (!ScalarTraits<S>::exact) {
      out.params.emplace_back("delta", ScalarTraits<S>::str(params.delta));
      bool progression = name == "mult_norm_blowup_progression";
      if (!progression && n > 512) fail(ErrorCode::invalid_argument, "exponent 1/2^n too fine for n > 512");
      for (std::size_t k = 1; k <= n; ++k) {
        std::vector<Rational> exponents;
        for (std::size_t i = 1; i <= k; ++i) {
          exponents.push_back(progression ? Rational(1, 4) + Rational(i, 4 * k)
                                          : Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(i)));
        }
        S scale = params.delta / mp::sqrt(S(static_cast<unsigned long>(k + 1)));
        out.values.push_back(detail::scaled_sum(scale, exponents));
      }
    }
  } else if (name == "power_at_one_plus_t") {
    FR eps = params.point.value_or(FR::t());
    if (!eps.is_infinitesimal()) fail(ErrorCode::invalid_argument, "the perturbation must be infinitesimal");
    for (std::size_t k = 1; k <= n; ++k) {
      out.values.push_back(fermat_extend(*powint_oracle<S>(static_cast<unsigned>(k)), FR(S(1)) + eps));
    }
  } else if (name == "sin_over_n_slice") {
    detail::require_float<S>(name);
    if constexpr (!ScalarTraits<S>::exact) {
      FR x = params.point.value_or(FR::t());
      if (!x.is_infinitesimal() || !(x * x).is_zero()) {
        fail(ErrorCode::invalid_argument, "sin_over_n_slice needs x with x^2 = 0");
      }
      S half_pi = boost::math::constants::half_pi<S>();
      auto sin = elementary_oracle<S>(Elementary::sin);
      for (std::size_t k = 1; k <= n; ++k) {
        S kk(static_cast<unsigned long>(k));
        auto f = rescaled<S>(sin, S(1) / kk, kk);
        out.values.push_back(fermat_extend(*f, FR(half_pi) + x));
      }
    }
  } else if (name == "lebesgue_partial_integrals") {
    IntegralOracle<S> integrals;
    std::vector<FR> deltas = params.deltas;
    for (std::size_t i = deltas.size() + 1; i <= n; ++i) deltas.push_back(FR::monomial(S(1), Rational(1, i)));
    for (std::size_t i = 1; i <= n; ++i) {
      if (!deltas[i - 1].is_infinitesimal()) fail(ErrorCode::invalid_argument, "δᵢ must be infinitesimal");
      integrals.declare("sigma_" + std::to_string(i + 1), S(0), S(1), S(1));
    }
    for (std::size_t k = 1; k <= n; ++k) {
      // f_k = Σ_{i≤k} •σ_{i+1}·δᵢ, grouped by the exponents of the δᵢ.
      std::map<Rational, std::vector<std::pair<S, Oracle<S>>>> groups;
      for (std::size_t i = 1; i <= k; ++i) {
        auto sigma = declared_oracle<S>("sigma_" + std::to_string(i + 1));
        for (const auto& term : deltas[i - 1].terms()) {
          groups[term.exponent.value()].emplace_back(term.coefficient, sigma);
        }
      }
      std::vector<typename QSFunction<S>::Component> components;
      for (auto& [e, terms] : groups) components.push_back({e, linear_combination<S>(std::move(terms))});
      out.values.push_back(integrate_qs(QSFunction<S>(std::move(components)), S(0), S(1), integrals));
    }
  } else {
    fail(ErrorCode::unknown_name, "unknown counterexample '" + std::string(name) + "'");
  }
  return out;
}

}  // namespace fermat
