#pragma once

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "rydspec/errors.hpp"

namespace rydspec {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Exact representation of sign * sqrt(num/den) with num/den a non-negative
// rational in lowest terms.  Wigner 3-j symbols and dipole couplings are
// numbers of exactly this form, so carrying them exactly until the final
// conversion to double removes every rounding step but the last.
class RationalRoot {
  public:
    RationalRoot() = default; // zero

    RationalRoot(int sign, cpp_int num, cpp_int den) {
        if (den <= 0)
            throw DomainError("RationalRoot: denominator must be positive");
        if (num < 0)
            throw DomainError("RationalRoot: radicand must be non-negative");
        if (num == 0 || sign == 0) {
            sign_ = 0;
            num_ = 0;
            den_ = 1;
            return;
        }
        const cpp_int g = gcd(num, den);
        sign_ = sign > 0 ? 1 : -1;
        num_ = num / g;
        den_ = den / g;
    }

    // value = sign * sqrt(|square|); the sign argument wins, square >= 0.
    static RationalRoot from_square(int sign, const cpp_rational& square) {
        if (square < 0)
            throw DomainError("RationalRoot: radicand must be non-negative");
        return RationalRoot(sign, numerator(square), denominator(square));
    }

    int sign() const { return sign_; }
    const cpp_int& num() const { return num_; }
    const cpp_int& den() const { return den_; }
    bool is_zero() const { return sign_ == 0; }

    cpp_rational squared() const { return cpp_rational(num_, den_); }

    // One rounding: the ratio is formed in rationals, converted once, then
    // rooted.  Distinct RationalRoots with equal |value| therefore convert
    // to bit-identical doubles.
    double value() const {
        if (sign_ == 0)
            return 0.0;
        const double mag = std::sqrt(cpp_rational(num_, den_).convert_to<double>());
        return sign_ > 0 ? mag : -mag;
    }

    RationalRoot operator-() const {
        RationalRoot r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    // Multiply the squared magnitude by a positive rational factor,
    // optionally flipping the sign (factor_sign = -1).
    RationalRoot scaled(int factor_sign, const cpp_rational& square_factor) const {
        if (square_factor <= 0)
            throw DomainError("RationalRoot: scale factor must be positive");
        if (sign_ == 0)
            return RationalRoot();
        const cpp_rational sq = squared() * square_factor;
        return from_square(sign_ * factor_sign, sq);
    }

    friend bool operator==(const RationalRoot& a, const RationalRoot& b) {
        return a.sign_ == b.sign_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

  private:
    int sign_ = 0;
    cpp_int num_ = 0;
    cpp_int den_ = 1;
};

} // namespace rydspec
