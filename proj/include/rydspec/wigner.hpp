#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "rydspec/half_int.hpp"
#include "rydspec/rational_root.hpp"

namespace rydspec {

// Largest factorial the exact 3-j evaluator will request.  j1+j2+j3+1 <= 40
// admits every symbol with all j <= 10, far beyond the manifolds used here.
inline constexpr int kMaxFactorialArg = 40;

inline const cpp_int& factorial(int n) {
    if (n < 0 || n > kMaxFactorialArg)
        throw DomainError("factorial argument " + std::to_string(n) +
                          " outside cached range [0, " + std::to_string(kMaxFactorialArg) + "]");
    static const std::vector<cpp_int> table = [] {
        std::vector<cpp_int> t(kMaxFactorialArg + 1);
        t[0] = 1;
        for (int k = 1; k <= kMaxFactorialArg; ++k)
            t[k] = t[k - 1] * k;
        return t;
    }();
    return table[static_cast<std::size_t>(n)];
}

namespace detail {

inline void check_jm(HalfInt j, HalfInt m, const char* label) {
    if (j.twice() < 0)
        throw DomainError(std::string(label) + ": j must be >= 0, got " + j.str());
    if (!HalfInt::same_character(j, m))
        throw DomainError(std::string(label) + ": m=" + m.str() + " has wrong character for j=" + j.str());
    if (m.abs() > j)
        throw DomainError(std::string(label) + ": |m|=" + m.abs().str() + " exceeds j=" + j.str());
}

inline bool triangle_ok(HalfInt j1, HalfInt j2, HalfInt j3) {
    // One condition hides here beyond the usual |j1-j2| <= j3 <= j1+j2:
    // the perimeter j1+j2+j3 must be an integer.
    if ((j1.twice() + j2.twice() + j3.twice()) % 2 != 0)
        return false;
    return (j1 - j2).abs() <= j3 && j3 <= j1 + j2;
}

} // namespace detail

// Wigner 3-j symbol (j1 j2 j3; m1 m2 m3), evaluated exactly with the Racah
// alternating sum over big integers.  Selection-rule violations (triangle,
// m1+m2+m3 != 0) give an exact zero; malformed quantum numbers throw.
inline RationalRoot wigner3j(HalfInt j1, HalfInt j2, HalfInt j3,
                             HalfInt m1, HalfInt m2, HalfInt m3) {
    detail::check_jm(j1, m1, "wigner3j");
    detail::check_jm(j2, m2, "wigner3j");
    detail::check_jm(j3, m3, "wigner3j");
    if (j1 + j2 + j3 + HalfInt(1) > HalfInt(kMaxFactorialArg))
        throw DomainError("wigner3j: j1+j2+j3 too large for cached factorials");

    if ((m1 + m2 + m3).twice() != 0)
        return RationalRoot();
    if (!detail::triangle_ok(j1, j2, j3))
        return RationalRoot();

    // All of these are integers once the selection rules hold.
    const auto as_int = [](HalfInt h) { return h.twice() / 2; };
    const int a1 = as_int(j1 + j2 - j3);
    const int a2 = as_int(j1 - j2 + j3);
    const int a3 = as_int(-j1 + j2 + j3);
    const int p = as_int(j1 + j2 + j3 + HalfInt(1));

    const int j1m1 = as_int(j1 - m1), j1p1 = as_int(j1 + m1);
    const int j2m2 = as_int(j2 - m2), j2p2 = as_int(j2 + m2);
    const int j3m3 = as_int(j3 - m3), j3p3 = as_int(j3 + m3);

    // Squared prefactor: triangle coefficient times the m-dependent factorials.
    const cpp_rational delta2(factorial(a1) * factorial(a2) * factorial(a3), factorial(p));
    const cpp_rational weight2 = delta2 * factorial(j1m1) * factorial(j1p1) * factorial(j2m2) *
                                 factorial(j2p2) * factorial(j3m3) * factorial(j3p3);

    const int k_lo = std::max({0, as_int(j2 - j3 - m1), as_int(j1 - j3 + m2)});
    const int k_hi = std::min({a1, j1m1, j2p2});

    cpp_rational sum = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const cpp_int denom = factorial(k) * factorial(a1 - k) * factorial(j1m1 - k) *
                              factorial(j2p2 - k) * factorial(as_int(j3 - j2 + m1) + k) *
                              factorial(as_int(j3 - j1 - m2) + k);
        const cpp_rational term(1, denom);
        sum += (k % 2 == 0) ? term : -term;
    }
    if (sum == 0)
        return RationalRoot();

    // Overall phase (-1)^(j1-j2-m3); the exponent is an integer here.
    const int phase_exp = as_int(j1 - j2 - m3);
    int sign = (phase_exp % 2 == 0) ? 1 : -1;
    if (sum < 0)
        sign = -sign;

    return RationalRoot::from_square(sign, sum * sum * weight2);
}

// Rotation matrix d^j(theta) about y, on the basis m = -j..+j ascending.
// Entry (r, c) is <j, m_r | exp(-i theta J_y) | j, m_c> with
// m_r = -j + r, m_c = -j + c.  Computed as the exponential of the real
// antisymmetric generator K = (J+ - J-)/2, which in this ordering gives
// d^{1/2}(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
inline Eigen::MatrixXd wigner_small_d(HalfInt j, double theta) {
    if (j.twice() < 0)
        throw DomainError("wigner_small_d: j must be >= 0, got " + j.str());
    const int n = j.twice() + 1;
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    // Ladder element <j,m+1|J+|j,m> = sqrt(j(j+1) - m(m+1)), in units of hbar.
    for (int c = 0; c + 1 < n; ++c) {
        const double m = -j.value() + c;
        const double amp = std::sqrt(j.value() * (j.value() + 1.0) - m * (m + 1.0));
        k(c + 1, c) += 0.5 * amp; // J+ / 2
        k(c, c + 1) -= 0.5 * amp; // -J- / 2
    }
    return (theta * k).exp();
}

// Exact reduced form of <upper J', m' | r_q | lower J, m> with the reduced
// matrix element set to 1:
//
//   <J' m'| r_q |J m> = (-1)^(J'-m') (J' 1 J; -m' q m)          for J' >= J.
//
// For J' < J the same real reduced matrix element is reached through the
// conjugation identity <a|r_q|b> = (-1)^q <b|r_{-q}|a>*, which keeps the
// pair of ladder directions Hermitian-consistent.
inline RationalRoot dipole_reduced(HalfInt lower_j, HalfInt m,
                                   HalfInt upper_j, HalfInt m_prime, int q) {
    detail::check_jm(lower_j, m, "dipole");
    detail::check_jm(upper_j, m_prime, "dipole");
    const int dj = upper_j.twice() - lower_j.twice();
    if (dj != -2 && dj != 0 && dj != 2)
        throw DomainError("dipole: |J'-J| must be 0 or 1 (got J=" + lower_j.str() +
                          ", J'=" + upper_j.str() + ")");
    if (q < -1 || q > 1)
        throw DomainError("dipole: q must be -1, 0, or +1");

    if (dj < 0) {
        const RationalRoot flipped = dipole_reduced(upper_j, m_prime, lower_j, m, -q);
        return (q % 2 == 0) ? flipped : -flipped;
    }

    if ((m_prime - m).twice() != 2 * q)
        return RationalRoot();

    const RationalRoot w = wigner3j(upper_j, HalfInt(1), lower_j, -m_prime, HalfInt::from_twice(2 * q), m);
    const int phase_exp = (upper_j.twice() - m_prime.twice()) / 2;
    return (phase_exp % 2 == 0) ? w : -w;
}

// Same element as a physical amplitude: reduced_me carries the radial
// integral <J'||r||J> (or e<J'||r||J> if a dipole moment is wanted).
inline std::complex<double> dipole_matrix_element(HalfInt lower_j, HalfInt m,
                                                  HalfInt upper_j, HalfInt m_prime,
                                                  int q, double reduced_me) {
    return {dipole_reduced(lower_j, m, upper_j, m_prime, q).value() * reduced_me, 0.0};
}

} // namespace rydspec
