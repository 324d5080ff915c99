#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace pavesched {

/// Exact currency amount stored as an integer number of cents.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_cents(std::int64_t cents) { return Money(cents); }

  /// Parses "123", "123.4", "123.45" or "-0.50". More than two fractional
  /// digits, exponents and thousands separators are rejected.
  static Money parse(std::string_view text);

  constexpr std::int64_t cents() const { return cents_; }
  double to_double() const { return static_cast<double>(cents_) / 100.0; }

  /// Canonical two-decimal form, e.g. "1080947.98" or "-0.05".
  std::string str() const;

  constexpr Money& operator+=(Money other) { cents_ += other.cents_; return *this; }
  constexpr Money& operator-=(Money other) { cents_ -= other.cents_; return *this; }
  friend constexpr Money operator+(Money a, Money b) { return a += b; }
  friend constexpr Money operator-(Money a, Money b) { return a -= b; }
  friend constexpr Money operator-(Money a) { return Money(-a.cents_); }
  friend constexpr auto operator<=>(Money, Money) = default;

  friend std::ostream& operator<<(std::ostream& os, Money m) { return os << m.str(); }

 private:
  constexpr explicit Money(std::int64_t cents) : cents_(cents) {}
  std::int64_t cents_ = 0;
};

constexpr Money abs(Money m) { return m < Money() ? -m : m; }

}  // namespace pavesched
