#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cde {

/// Ceiling of a/b in pure integer math; requires a >= 0 and b > 0.
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return (a + b - 1) / b;
}

/// Exact rational, always reduced, denominator always positive. Every rate in
/// this library has a numerator below num_clients * num_packets and a
/// denominator below num_clients, so cross-multiplied int64 arithmetic is
/// nowhere near overflow.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design
  constexpr Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    reduce();
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr bool is_integer() const { return den_ == 1; }

  /// Smallest integer not below this value.
  constexpr std::int64_t ceil() const {
    return num_ >= 0 ? ceil_div(num_, den_) : num_ / den_;
  }

  friend constexpr Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend constexpr Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend constexpr Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend constexpr bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend constexpr std::strong_ordering operator<=>(const Rational& a,
                                                    const Rational& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  /// "p/q", or just "p" for integers.
  std::string to_string() const {
    return is_integer() ? std::to_string(num_)
                        : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Accepts "p" or "p/q" with q > 0; anything else yields nullopt.
  static std::optional<Rational> parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  constexpr void reduce() {
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Sum-rates are exact end to end; no floating point in the math core.
using Rate = Rational;

inline std::optional<Rational> Rational::parse(std::string_view text) {
  const auto parse_int = [](std::string_view s) -> std::optional<std::int64_t> {
    if (s.empty()) return std::nullopt;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return std::nullopt;
    std::int64_t value = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
      value = value * 10 + (s[i] - '0');
      if (value < 0) return std::nullopt;  // overflowed
    }
    return s[0] == '-' ? -value : value;
  };
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    const auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  const auto n = parse_int(text.substr(0, slash));
  const auto d = parse_int(text.substr(slash + 1));
  if (!n || !d || *d <= 0) return std::nullopt;
  return Rational(*n, *d);
}

}  // namespace cde
