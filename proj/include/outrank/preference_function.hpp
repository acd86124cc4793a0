#pragma once

// Generalized criteria: map a directed score difference to a preference
// degree in [0, 1].

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "outrank/error.hpp"
#include "outrank/rational.hpp"

namespace outrank {

/// Step at zero: any positive advantage is full preference.
struct Usual {
  friend bool operator==(const Usual&, const Usual&) = default;
};

/// Full preference once the advantage exceeds the indifference threshold q.
template <typename Scalar>
struct UShape {
  Scalar q;
  friend bool operator==(const UShape&, const UShape&) = default;
};

/// Linear ramp from 0 to the preference threshold p.
template <typename Scalar>
struct VShape {
  Scalar p;
  friend bool operator==(const VShape&, const VShape&) = default;
};

/// 0 up to q, one half on (q, p], 1 beyond p.
template <typename Scalar>
struct Level {
  Scalar q;
  Scalar p;
  friend bool operator==(const Level&, const Level&) = default;
};

/// 0 up to q, linear on (q, p], 1 beyond p.
template <typename Scalar>
struct Linear {
  Scalar q;
  Scalar p;
  friend bool operator==(const Linear&, const Linear&) = default;
};

/// 1 - exp(-d^2 / 2s^2) for positive d.
template <typename Scalar>
struct Gaussian {
  Scalar s;
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

template <typename Scalar>
using PreferenceFunction =
    std::variant<Usual, UShape<Scalar>, VShape<Scalar>, Level<Scalar>,
                 Linear<Scalar>, Gaussian<Scalar>>;

template <typename Scalar>
std::string_view function_name(const PreferenceFunction<Scalar>& f) {
  constexpr std::string_view names[] = {"usual",  "ushape", "vshape",
                                        "level",  "linear", "gaussian"};
  return names[f.index()];
}

namespace detail {

template <typename Scalar>
Scalar gaussian_degree(const Scalar& d, const Scalar& s) {
  const double dd = to_double(d);
  const double ss = to_double(s);
  const double value = 1.0 - std::exp(-(dd * dd) / (2.0 * ss * ss));
  if constexpr (std::is_same_v<Scalar, Rational>) {
    Rational r = approximate(value);
    if (r < 0) r = 0;
    if (r > 1) r = 1;
    return r;
  } else {
    return static_cast<Scalar>(value);
  }
}

}  // namespace detail

/// Throws a Config error naming `criterion` when thresholds are out of range.
template <typename Scalar>
void validate_function(const PreferenceFunction<Scalar>& f,
                       const std::string& criterion) {
  auto fail = [&](const std::string& what) {
    throw config_error("INVALID_THRESHOLD",
                       "criterion '" + criterion + "': " + what, criterion);
  };
  std::visit(
      [&](const auto& fn) {
        using F = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<F, UShape<Scalar>>) {
          if (fn.q < 0) fail("indifference threshold q must be >= 0");
        } else if constexpr (std::is_same_v<F, VShape<Scalar>>) {
          if (!(fn.p > 0)) fail("preference threshold p must be > 0");
        } else if constexpr (std::is_same_v<F, Level<Scalar>> ||
                             std::is_same_v<F, Linear<Scalar>>) {
          if (fn.q < 0) fail("indifference threshold q must be >= 0");
          if (!(fn.p > fn.q)) fail("preference threshold p must exceed q");
        } else if constexpr (std::is_same_v<F, Gaussian<Scalar>>) {
          if (!(fn.s > 0)) fail("gaussian parameter s must be > 0");
        }
      },
      f);
}

/// Preference degree for a directed difference `d`. Thresholds are assumed
/// valid (see validate_function).
template <typename Scalar>
Scalar preference_degree(const Scalar& d, const PreferenceFunction<Scalar>& f) {
  const Scalar zero{0};
  const Scalar one{1};
  if (!(d > zero)) return zero;
  return std::visit(
      [&](const auto& fn) -> Scalar {
        using F = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<F, Usual>) {
          return one;
        } else if constexpr (std::is_same_v<F, UShape<Scalar>>) {
          return d > fn.q ? one : zero;
        } else if constexpr (std::is_same_v<F, VShape<Scalar>>) {
          return d >= fn.p ? one : Scalar(d / fn.p);
        } else if constexpr (std::is_same_v<F, Level<Scalar>>) {
          if (d <= fn.q) return zero;
          return d <= fn.p ? Scalar(one / Scalar{2}) : one;
        } else if constexpr (std::is_same_v<F, Linear<Scalar>>) {
          if (d <= fn.q) return zero;
          return d >= fn.p ? one : Scalar((d - fn.q) / (fn.p - fn.q));
        } else {
          return detail::gaussian_degree(d, fn.s);
        }
      },
      f);
}

}  // namespace outrank
