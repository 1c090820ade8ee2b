#pragma once

#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "pcover/errors.hpp"

namespace pcover {

/// Exact rational with 64-bit numerator/denominator, always normalized
/// (den > 0, gcd(num, den) == 1). Intermediates use 128-bit arithmetic;
/// results that do not fit in 64 bits throw std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  template <std::integral I>
  constexpr Rational(I num) : num_(static_cast<std::int64_t>(num)), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }
  template <std::floating_point F>
  Rational(F) = delete;  // use parse() for decimal literals

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Parses "3", "-2/7", "0.125" or "1e-3" exactly.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto fail = [&] { throw InvalidArgument("not a rational number: '" + s + "'"); };
    if (s.empty()) fail();
    if (auto slash = s.find('/'); slash != std::string::npos) {
      Rational a = parse(s.substr(0, slash));
      Rational b = parse(s.substr(slash + 1));
      if (b.num_ == 0) fail();
      return a / b;
    }
    std::int64_t exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      std::size_t used = 0;
      try {
        exponent = std::stoll(s.substr(e + 1), &used);
      } catch (const std::exception&) {
        fail();
      }
      if (used != s.size() - e - 1) fail();
      s.resize(e);
    }
    bool negative = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
    __int128 mantissa = 0;
    int digits = 0;
    bool seen_point = false;
    int fraction_digits = 0;
    for (; i < s.size(); ++i) {
      char ch = s[i];
      if (ch == '.' && !seen_point) {
        seen_point = true;
        continue;
      }
      if (ch < '0' || ch > '9') fail();
      mantissa = mantissa * 10 + (ch - '0');
      if (++digits > 18) fail();
      if (seen_point) ++fraction_digits;
    }
    if (digits == 0) fail();
    exponent -= fraction_digits;
    if (exponent > 18 || exponent < -18) fail();
    __int128 scale = 1;
    for (std::int64_t k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) scale *= 10;
    __int128 num = negative ? -mantissa : mantissa;
    return exponent >= 0 ? from_wide(num * scale, 1) : from_wide(num, scale);
  }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Largest integer <= value.
  std::int64_t floor() const noexcept {
    std::int64_t q = num_ / den_;
    return (num_ % den_ != 0 && num_ < 0) ? q - 1 : q;
  }
  /// Smallest integer >= value.
  std::int64_t ceil() const noexcept { return -Rational(-num_, den_).floor(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InvalidArgument("rational division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend int compare(const Rational& a, const Rational& b) noexcept {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l < r ? -1 : (l > r ? 1 : 0);
  }
  friend bool operator<(const Rational& a, const Rational& b) noexcept { return compare(a, b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) noexcept { return compare(a, b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) noexcept { return compare(a, b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) noexcept { return compare(a, b) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static Rational from_wide(__int128 num, __int128 den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    constexpr __int128 kMax = INT64_MAX;
    if (num > kMax || num < -kMax || den > kMax) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  void assign(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Exact test of `count < bound * scale` for integer count and scale.
inline bool less_than_scaled(std::int64_t count, const Rational& bound, std::int64_t scale) {
  return static_cast<__int128>(count) * bound.den() < static_cast<__int128>(bound.num()) * scale;
}

}  // namespace pcover
