#pragma once

// Exact rational scalar used throughout the ranking kernel, plus the Eigen
// glue that lets it sit inside dense matrices.

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace outrank {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::number<
    boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// Denominator used when a transcendental preference value has to be
/// approximated by a rational.
inline const BigInt& approximation_denominator() {
  static const BigInt den{1'000'000'000'000LL};
  return den;
}

}  // namespace outrank

namespace Eigen {

template <>
struct NumTraits<outrank::Rational> : GenericNumTraits<outrank::Rational> {
  using Real = outrank::Rational;
  using NonInteger = outrank::Rational;
  using Literal = outrank::Rational;
  using Nested = outrank::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16
  };

  static inline outrank::Rational epsilon() { return outrank::Rational{0}; }
  static inline outrank::Rational dummy_precision() { return outrank::Rational{0}; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace outrank {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Shape and element-wise exact equality. Eigen's operator== and cwiseEqual
/// do not compile for Rational: Boost's comparison templates capture them.
template <typename A, typename B>
bool exact_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (!(a(i, k) == b(i, k))) return false;
    }
  }
  return true;
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational{BigInt{num}, BigInt{den}};
}

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double r) { return r; }

/// Nearest rational with the fixed approximation denominator.
inline Rational approximate(double value) {
  const long double scaled =
      static_cast<long double>(value) * 1'000'000'000'000.0L;
  const auto rounded = static_cast<long long>(std::llround(scaled));
  return Rational{BigInt{rounded}, approximation_denominator()};
}

/// Exact value rounded half away from zero to `digits` decimals, rendered
/// in fixed notation. Negative zero is printed without a sign.
std::string to_fixed(const Rational& value, int digits);

/// Accepts "3", "-7/4", "0.078" and "-1.5".
Rational parse_rational(std::string_view text);

}  // namespace outrank
