#pragma once

// Exact arithmetic in Q with the p-adic absolute value |x| = g^(-v_p(x)).
// The value group G = <g> is cyclic and is carried as integer exponents of g,
// with g > 1, so |p| = g^-1 and exponent order matches group order.

#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ultranorm/error.hpp"

namespace ultranorm {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class FieldConfig {
 public:
  explicit FieldConfig(std::int64_t p = 2) : p_(p) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "p must be prime, got " + std::to_string(p));
  }

  std::int64_t p() const noexcept { return p_; }

  friend bool operator==(const FieldConfig&, const FieldConfig&) = default;

 private:
  std::int64_t p_;
};

/// An element of Q, always kept in lowest terms with a positive denominator.
class Scalar {
 public:
  Scalar() = default;
  Scalar(std::int64_t n) : value_(n) {}  // NOLINT: integers promote implicitly
  Scalar(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    value_ = den < 0 ? BigRational(BigInt(-num), BigInt(-den)) : BigRational(num, den);
  }
  explicit Scalar(BigRational value) : value_(std::move(value)) {}

  /// Accepts "n", "-n" or "n/d".
  static Scalar parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    auto parse_int = [&](std::string_view s) {
      s = trim(s);
      std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (i == s.size()) throw Error(ErrorKind::InvalidArgument, "malformed scalar '" + std::string(text) + "'");
      for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
          throw Error(ErrorKind::InvalidArgument, "malformed scalar '" + std::string(text) + "'");
      BigInt v(std::string(s.substr(i)));
      return s[0] == '-' ? BigInt(-v) : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Scalar(BigRational(parse_int(text)));
    return Scalar(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  const BigRational& value() const noexcept { return value_; }

  bool is_zero() const { return value_ == 0; }

  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return Scalar(BigRational(1) / value_);
  }

  /// Serialized as "num/den"; integers are written as "num/1".
  std::string to_string() const { return numerator().str() + "/" + denominator().str(); }

  /// Human-oriented form: "3", "-1/5".
  std::string pretty() const {
    if (denominator() == 1) return numerator().str();
    return to_string();
  }

  Scalar operator-() const { return Scalar(BigRational(-value_)); }
  Scalar& operator+=(const Scalar& o) { value_ += o.value_; return *this; }
  Scalar& operator-=(const Scalar& o) { value_ -= o.value_; return *this; }
  Scalar& operator*=(const Scalar& o) { value_ *= o.value_; return *this; }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    value_ /= o.value_;
    return *this;
  }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  BigRational value_{0};
};

/// v_p(x); std::nullopt stands for +infinity (x = 0).
using Valuation = std::optional<std::int64_t>;

namespace detail {

inline std::int64_t strip_prime(BigInt n, std::int64_t p) {
  std::int64_t count = 0;
  if (n < 0) n = -n;
  const BigInt bp(p);
  BigInt q, r;
  for (;;) {
    boost::multiprecision::divide_qr(n, bp, q, r);
    if (r != 0) return count;
    n = std::move(q);
    ++count;
  }
}

}  // namespace detail

inline Valuation valuation(const Scalar& x, const FieldConfig& cfg) {
  if (x.is_zero()) return std::nullopt;
  return detail::strip_prime(x.numerator(), cfg.p()) - detail::strip_prime(x.denominator(), cfg.p());
}

/// An element of G u {0}: either g^m or the adjoined least element ZERO.
class AbsValue {
 public:
  static AbsValue zero() { return AbsValue(); }
  static AbsValue power(std::int64_t m) { return AbsValue(m); }

  bool is_zero() const noexcept { return !exponent_; }
  /// Only meaningful when !is_zero().
  std::int64_t exponent() const { return *exponent_; }

  friend AbsValue operator*(const AbsValue& a, const AbsValue& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return power(*a.exponent_ + *b.exponent_);
  }

  friend bool operator==(const AbsValue&, const AbsValue&) = default;
  friend std::strong_ordering operator<=>(const AbsValue& a, const AbsValue& b) {
    if (a.is_zero() || b.is_zero()) return !a.is_zero() <=> !b.is_zero();
    return *a.exponent_ <=> *b.exponent_;
  }

  std::string to_string() const { return is_zero() ? "0" : "g^" + std::to_string(*exponent_); }

 private:
  AbsValue() = default;
  explicit AbsValue(std::int64_t m) : exponent_(m) {}
  std::optional<std::int64_t> exponent_;
};

inline AbsValue abs(const Scalar& x, const FieldConfig& cfg) {
  auto v = valuation(x, cfg);
  return v ? AbsValue::power(-*v) : AbsValue::zero();
}

/// p^n as an exact rational, so abs(result) = g^-n.
inline Scalar uniformizer_power(std::int64_t n, const FieldConfig& cfg) {
  BigInt pow = boost::multiprecision::pow(BigInt(cfg.p()), static_cast<unsigned>(n < 0 ? -n : n));
  return n >= 0 ? Scalar(pow, BigInt(1)) : Scalar(BigInt(1), pow);
}

}  // namespace ultranorm
