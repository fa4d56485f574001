#pragma once

// Exact fixed-point money and decay fractions.
//
// Every price, valuation and storage cost in the library is a Money: an
// integer count of 10^-Decimals units. Nothing in the solvers compares
// with an epsilon, so candidate prices built along different routes
// (v + (t - s) * c) compare equal exactly when they are equal.

#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#ifndef SHELFPRICE_MONEY_DECIMALS
#define SHELFPRICE_MONEY_DECIMALS 3
#endif

namespace shelfprice {

using int128 = __int128;

namespace detail {

template <typename Rep>
constexpr Rep pow10(int exponent) {
  Rep result = 1;
  for (int i = 0; i < exponent; ++i) result *= 10;
  return result;
}

template <typename Rep>
std::string format_fixed(Rep raw, int decimals, bool trim) {
  const bool negative = raw < 0;
  // Work on the magnitude as unsigned 128-bit so INT_MIN style values are fine.
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(raw + 1)) + 1
                                   : static_cast<unsigned __int128>(raw);
  std::string digits;
  do {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  } while (mag != 0);
  if (static_cast<int>(digits.size()) <= decimals)
    digits.insert(0, static_cast<std::size_t>(decimals + 1 - static_cast<int>(digits.size())), '0');
  std::string whole = digits.substr(0, digits.size() - static_cast<std::size_t>(decimals));
  std::string frac = digits.substr(digits.size() - static_cast<std::size_t>(decimals));
  if (trim) {
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
  }
  std::string out = negative ? "-" : "";
  out += whole;
  if (!frac.empty()) {
    out += '.';
    out += frac;
  }
  return out;
}

// Parses "[-]digits[.digits]" into a scaled integer. Extra fractional digits
// are accepted only when they are zeros; anything that would need rounding
// is rejected.
template <typename Rep>
Rep parse_fixed(std::string_view text, int decimals) {
  auto fail = [&]() -> Rep {
    throw std::invalid_argument("not an exact decimal: '" + std::string(text) + "'");
  };
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return fail();
  const auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (whole.empty() && frac.empty()) return fail();
  if (dot != std::string_view::npos && frac.empty()) return fail();

  constexpr Rep max = std::numeric_limits<Rep>::max();
  const Rep scale = pow10<Rep>(decimals);
  Rep value = 0;
  for (char ch : whole) {
    if (ch < '0' || ch > '9') return fail();
    if (value > (max - (ch - '0')) / 10) return fail();
    value = value * 10 + (ch - '0');
  }
  if (value > max / scale) return fail();
  value *= scale;
  Rep place = scale;
  for (std::size_t i = 0; i < frac.size(); ++i) {
    const char ch = frac[i];
    if (ch < '0' || ch > '9') return fail();
    place /= 10;
    if (static_cast<int>(i) >= decimals) {
      if (ch != '0') return fail();
      continue;
    }
    value += static_cast<Rep>(ch - '0') * place;
  }
  return negative ? -value : value;
}

}  // namespace detail

/// Fixed-point amount with `Decimals` digits after the point.
template <int Decimals, typename Rep = std::int64_t>
class BasicMoney {
 public:
  using rep = Rep;
  static constexpr int decimals = Decimals;
  static constexpr Rep scale = detail::pow10<Rep>(Decimals);

  constexpr BasicMoney() = default;

  static constexpr BasicMoney from_raw(Rep raw) {
    BasicMoney m;
    m.raw_ = raw;
    return m;
  }
  static constexpr BasicMoney units(std::int64_t whole) { return from_raw(static_cast<Rep>(whole) * scale); }
  static BasicMoney parse(std::string_view text) { return from_raw(detail::parse_fixed<Rep>(text, Decimals)); }

  constexpr Rep raw() const { return raw_; }

  /// Shortest exact decimal form ("1000", "0.5", "-2.125").
  std::string to_string() const { return detail::format_fixed(raw_, Decimals, true); }
  /// All `Decimals` digits, no trimming.
  std::string to_fixed_string() const { return detail::format_fixed(raw_, Decimals, false); }

  friend std::ostream& operator<<(std::ostream& os, const BasicMoney& m) { return os << m.to_string(); }

  /// Lossy, for plotting only.
  double to_double() const { return static_cast<double>(raw_) / static_cast<double>(scale); }

  constexpr BasicMoney operator-() const { return from_raw(-raw_); }
  constexpr BasicMoney& operator+=(BasicMoney other) {
    raw_ += other.raw_;
    return *this;
  }
  constexpr BasicMoney& operator-=(BasicMoney other) {
    raw_ -= other.raw_;
    return *this;
  }
  friend constexpr BasicMoney operator+(BasicMoney a, BasicMoney b) { return a += b; }
  friend constexpr BasicMoney operator-(BasicMoney a, BasicMoney b) { return a -= b; }
  friend constexpr BasicMoney operator*(BasicMoney a, std::int64_t k) { return from_raw(a.raw_ * static_cast<Rep>(k)); }
  friend constexpr BasicMoney operator*(std::int64_t k, BasicMoney a) { return a * k; }

  friend constexpr bool operator==(BasicMoney a, BasicMoney b) { return a.raw_ == b.raw_; }
  friend constexpr std::strong_ordering operator<=>(BasicMoney a, BasicMoney b) {
    return a.raw_ < b.raw_ ? std::strong_ordering::less
         : a.raw_ > b.raw_ ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
  }

 private:
  Rep raw_ = 0;
};

using Money = BasicMoney<SHELFPRICE_MONEY_DECIMALS>;

/// A value in [0, 1] with six decimal places; the decay factor r(l).
class Fraction {
 public:
  static constexpr int decimals = 6;
  static constexpr std::int64_t denominator = 1'000'000;

  constexpr Fraction() = default;
  static constexpr Fraction from_raw(std::int64_t parts) {
    if (parts < 0 || parts > denominator) throw std::invalid_argument("fraction outside [0,1]");
    Fraction f;
    f.parts_ = parts;
    return f;
  }
  static constexpr Fraction one() { return from_raw(denominator); }
  static constexpr Fraction zero() { return from_raw(0); }
  static Fraction parse(std::string_view text) { return from_raw(detail::parse_fixed<std::int64_t>(text, decimals)); }

  constexpr std::int64_t raw() const { return parts_; }
  constexpr bool is_zero() const { return parts_ == 0; }
  constexpr bool is_one() const { return parts_ == denominator; }
  std::string to_string() const { return detail::format_fixed(parts_, decimals, true); }

  friend std::ostream& operator<<(std::ostream& os, Fraction f) { return os << f.to_string(); }

  friend constexpr bool operator==(Fraction, Fraction) = default;
  friend constexpr auto operator<=>(Fraction, Fraction) = default;

 private:
  std::int64_t parts_ = 0;
};

/// Money times a Fraction, exact. Used for decayed values and buyer utility.
using FineMoney = BasicMoney<SHELFPRICE_MONEY_DECIMALS + Fraction::decimals, int128>;

constexpr FineMoney widen(Money m) { return FineMoney::from_raw(static_cast<int128>(m.raw()) * Fraction::denominator); }

constexpr FineMoney operator*(Money m, Fraction f) {
  return FineMoney::from_raw(static_cast<int128>(m.raw()) * f.raw());
}

/// Largest Money not above `fine`.
constexpr Money floor_money(FineMoney fine) {
  int128 q = fine.raw() / Fraction::denominator;
  if (fine.raw() % Fraction::denominator != 0 && fine.raw() < 0) --q;
  return Money::from_raw(static_cast<std::int64_t>(q));
}

inline std::optional<Money> checked_add(Money a, Money b) {
  std::int64_t out{};
  if (__builtin_add_overflow(a.raw(), b.raw(), &out)) return std::nullopt;
  return Money::from_raw(out);
}

inline std::optional<Money> checked_mul(Money a, std::int64_t k) {
  std::int64_t out{};
  if (__builtin_mul_overflow(a.raw(), k, &out)) return std::nullopt;
  return Money::from_raw(out);
}

}  // namespace shelfprice
