#pragma once

#include <cctype>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>

#include "rydspec/errors.hpp"

namespace rydspec {

// Exact half-integer angular momentum quantum number, stored as twice its
// value.  J = 3/2 is HalfInt::from_twice(3); J = 2 is HalfInt(2).  All
// arithmetic stays in integers so quantum-number bookkeeping never suffers
// rounding.
class HalfInt {
  public:
    constexpr HalfInt() = default;
    constexpr HalfInt(int whole) : twice_(2 * whole) {}

    static constexpr HalfInt from_twice(int twice) {
        HalfInt h;
        h.twice_ = twice;
        return h;
    }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }

    friend constexpr bool operator==(HalfInt, HalfInt) = default;
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) {
        return a.twice_ <=> b.twice_;
    }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
        return from_twice(a.twice_ + b.twice_);
    }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
        return from_twice(a.twice_ - b.twice_);
    }
    constexpr HalfInt operator-() const { return from_twice(-twice_); }

    constexpr HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

    // True when a+b is an integer, i.e. both integer or both half-odd.
    // A projection m belongs to a manifold J only if same_character(J, m).
    static constexpr bool same_character(HalfInt a, HalfInt b) {
        return (a.twice_ + b.twice_) % 2 == 0;
    }

    // "3/2", "-1/2", "2", and the decimal spellings "0.5"/"1.0" -> HalfInt.
    // Whitespace is not accepted.
    static HalfInt parse(std::string_view text) {
        const std::string s(text);
        if (s.empty() || std::isspace(static_cast<unsigned char>(s.front())))
            throw DomainError("not a half-integer: '" + s + "'");
        std::size_t pos = 0;
        long whole = 0;
        try {
            whole = std::stol(s, &pos);
        } catch (const std::exception&) {
            throw DomainError("not a half-integer: '" + s + "'");
        }
        if (pos == s.size())
            return HalfInt(static_cast<int>(whole));
        if (s[pos] == '.') {
            // Only exact halves are representable: .5 and .0 fractions.
            const std::string frac = s.substr(pos + 1);
            const bool negative = s.front() == '-';
            if (frac == "5")
                return from_twice(2 * static_cast<int>(whole) + (negative ? -1 : 1));
            if (frac == "0")
                return HalfInt(static_cast<int>(whole));
            throw DomainError("not a half-integer: '" + s + "'");
        }
        if (s[pos] != '/')
            throw DomainError("not a half-integer: '" + s + "'");
        std::size_t dpos = 0;
        long den = 0;
        const std::string rest = s.substr(pos + 1);
        try {
            den = std::stol(rest, &dpos);
        } catch (const std::exception&) {
            throw DomainError("not a half-integer: '" + s + "'");
        }
        if (dpos != rest.size() || den != 2)
            throw DomainError("not a half-integer: '" + s + "'");
        return from_twice(static_cast<int>(whole));
    }

    std::string str() const {
        if (is_integer())
            return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

  private:
    int twice_ = 0;
};

} // namespace rydspec
