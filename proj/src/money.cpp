#include "pavesched/money.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "pavesched/errors.hpp"

namespace pavesched {

Money Money::parse(std::string_view text) {
  const std::string original(text);
  if (text.empty()) throw ParseError("empty money value");

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);

  auto all_digits = [](std::string_view s) {
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (whole.empty() || !all_digits(whole) || !all_digits(frac) ||
      (dot != std::string_view::npos && frac.empty()))
    throw ParseError("malformed money value '" + original + "'");
  if (frac.size() > 2)
    throw ParseError("money value '" + original + "' has more than 2 fractional digits");

  std::int64_t units = 0;
  auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), units);
  if (ec != std::errc() || ptr != whole.data() + whole.size() ||
      units > std::numeric_limits<std::int64_t>::max() / 100 - 1)
    throw ParseError("money value '" + original + "' out of range");

  std::int64_t cents = 0;
  if (!frac.empty()) {
    cents = (frac[0] - '0') * 10;
    if (frac.size() == 2) cents += frac[1] - '0';
  }
  const std::int64_t total = units * 100 + cents;
  return Money(negative ? -total : total);
}

std::string Money::str() const {
  const bool negative = cents_ < 0;
  const std::uint64_t mag = negative ? static_cast<std::uint64_t>(-(cents_ + 1)) + 1
                                     : static_cast<std::uint64_t>(cents_);
  std::string out = std::to_string(mag / 100);
  const auto frac = mag % 100;
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return negative ? "-" + out : out;
}

}  // namespace pavesched
