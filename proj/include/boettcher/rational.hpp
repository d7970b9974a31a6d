#pragma once

// Exact rational numbers for weight and exponent bookkeeping.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace boettcher {

using BigInt = boost::multiprecision::cpp_int;

/// Reduced fraction num/den with den >= 1. Backed by cpp_rational, which
/// keeps the canonical form on every operation.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT: integers promote
  Rational(const BigInt& num, const BigInt& den);

  /// Accepts "p/q" or "p" with optional sign on p.
  static Rational parse(std::string_view text);

  BigInt num() const { return boost::multiprecision::numerator(value_); }
  BigInt den() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_negative() const { return value_ < 0; }
  bool is_positive() const { return value_ > 0; }
  bool is_integer() const { return den() == 1; }

  double to_double() const;
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.value_ + b.value_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.value_ - b.value_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.value_ * b.value_); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-value_); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  explicit Rational(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}
  boost::multiprecision::cpp_rational value_;
};

Rational max(const Rational& a, const Rational& b);
Rational min(const Rational& a, const Rational& b);

/// Rational extended by -inf and +inf, used for interval endpoints and m_f.
class ExtendedRational {
 public:
  enum class Kind { neg_inf, finite, pos_inf };

  ExtendedRational(const Rational& v) : kind_(Kind::finite), value_(v) {}  // NOLINT
  static ExtendedRational neg_inf() { return ExtendedRational(Kind::neg_inf); }
  static ExtendedRational pos_inf() { return ExtendedRational(Kind::pos_inf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  /// Only valid when is_finite().
  const Rational& value() const;

  std::string str() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

 private:
  explicit ExtendedRational(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

}  // namespace boettcher
