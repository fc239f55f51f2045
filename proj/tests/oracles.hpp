#pragma once

// Independent reference implementations used only by the tests.  Each one
// reaches the checked quantity by a different route than the library:
// floating-point log-factorial Racah sum (vs exact big-integer arithmetic),
// the Wigner factorial-sum rotation formula (vs matrix exponential), a
// hand-indexed three-level Liouvillian (vs Kronecker assembly), and the
// analytic weak-probe ladder susceptibility (vs the full steady state).

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

inline double lfact(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// 3-j symbol from the Racah sum evaluated in doubles via log-factorials.
// Arguments are twice the quantum numbers.
inline double wigner3j_float(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    if (tm1 + tm2 + tm3 != 0)
        return 0.0;
    if ((tj1 + tj2 + tj3) % 2 != 0)
        return 0.0;
    if (tj3 < std::abs(tj1 - tj2) || tj3 > tj1 + tj2)
        return 0.0;
    const int a1 = (tj1 + tj2 - tj3) / 2;
    const int a2 = (tj1 - tj2 + tj3) / 2;
    const int a3 = (-tj1 + tj2 + tj3) / 2;
    const int p = (tj1 + tj2 + tj3) / 2 + 1;
    const int j1m1 = (tj1 - tm1) / 2, j1p1 = (tj1 + tm1) / 2;
    const int j2m2 = (tj2 - tm2) / 2, j2p2 = (tj2 + tm2) / 2;
    const int j3m3 = (tj3 - tm3) / 2, j3p3 = (tj3 + tm3) / 2;

    const double logw = 0.5 * (lfact(a1) + lfact(a2) + lfact(a3) - lfact(p) + lfact(j1m1) +
                               lfact(j1p1) + lfact(j2m2) + lfact(j2p2) + lfact(j3m3) + lfact(j3p3));

    const int k_lo = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
    const int k_hi = std::min({a1, j1m1, j2p2});
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double logd = lfact(k) + lfact(a1 - k) + lfact(j1m1 - k) + lfact(j2p2 - k) +
                            lfact((tj3 - tj2 + tm1) / 2 + k) + lfact((tj3 - tj1 - tm2) / 2 + k);
        const double term = std::exp(logw - logd);
        sum += (k % 2 == 0) ? term : -term;
    }
    const int phase = ((tj1 - tj2 - tm3) / 2) % 2 == 0 ? 1 : -1;
    return phase * sum;
}

// Rotation matrix in the ascending-m convention, from Wigner's closed-form
// factorial sum.  The library convention d(theta) = exp(theta (J+ - J-)/2)
// equals the standard active rotation d_std(-theta), whose matrix element is
//
//   d_std^j_{m'm}(b) = sqrt((j+m')!(j-m')!(j+m)!(j-m)!) *
//     sum_s (-1)^(m'-m+s) cos(b/2)^(2j+m-m'-2s) sin(b/2)^(m'-m+2s)
//           / ((j+m-s)! s! (m'-m+s)! (j-m'-s)!).
inline Eigen::MatrixXd small_d(int tj, double theta) {
    const int n = tj + 1;
    Eigen::MatrixXd d(n, n);
    const double b = -theta;
    const double cb = std::cos(0.5 * b);
    const double sb = std::sin(0.5 * b);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const int tmp = -tj + 2 * r; // 2*m'
            const int tm = -tj + 2 * c;  // 2*m
            const int jpmp = (tj + tmp) / 2, jmmp = (tj - tmp) / 2;
            const int jpm = (tj + tm) / 2, jmm = (tj - tm) / 2;
            const int dm = (tmp - tm) / 2; // m' - m
            const double logw =
                0.5 * (lfact(jpmp) + lfact(jmmp) + lfact(jpm) + lfact(jmm));
            double sum = 0.0;
            const int s_lo = std::max(0, -dm);
            const int s_hi = std::min(jpm, jmmp);
            for (int s = s_lo; s <= s_hi; ++s) {
                const double logd = lfact(jpm - s) + lfact(s) + lfact(dm + s) + lfact(jmmp - s);
                const int pc = ((2 * tj + tm - tmp) / 2) - 2 * s; // 2j + m - m' - 2s
                const int ps = dm + 2 * s;                        // m' - m + 2s
                const double term = std::exp(logw - logd) * std::pow(cb, pc) * std::pow(sb, ps);
                sum += ((dm + s) % 2 == 0) ? term : -term;
            }
            d(r, c) = sum;
        }
    }
    return d;
}

// Exact steady state of the driven, damped two-level atom.  The absorption
// identity a = 2 Gamma^2 rho_ee / Omega^2 follows from photon-flux balance
// (Gamma rho_ee = -Omega Im rho_ge in steady state), so it is free of any
// rotating-frame sign convention.
inline double two_level_absorption(double rabi, double detuning, double gamma_pop) {
    const double g = 0.5 * gamma_pop;
    const double rho_ee =
        0.25 * rabi * rabi / (detuning * detuning + g * g + 0.5 * rabi * rabi);
    return 2.0 * gamma_pop * gamma_pop * rho_ee / (rabi * rabi);
}

// Analytic weak-probe susceptibility of the three-level ladder
// g --(probe, Dp)--> e --(coupling, Dc)--> r with coherence decays
// gamma_ge, gamma_gr.  Returns -2 Gamma_e Im(rho_ge)/Omega_p.
inline double eit_weak_probe_absorption(double probe_rabi, double coupling_rabi, double dp,
                                        double dc, double gamma_e, double gamma_r) {
    const std::complex<double> i(0.0, 1.0);
    const double g_ge = 0.5 * gamma_e;
    const double g_gr = 0.5 * gamma_r;
    const std::complex<double> denom =
        g_ge - i * dp + 0.25 * coupling_rabi * coupling_rabi / (g_gr - i * (dp + dc));
    const std::complex<double> rho_ge = -0.5 * i * probe_rabi / denom;
    return -2.0 * gamma_e * std::imag(rho_ge) / probe_rabi;
}

// Hand-indexed Liouvillian of the three-level ladder (no Kronecker helper,
// no shared code with the library): d rho / dt restated element by element.
// rho is flattened row-major as rho[3*a + b].
inline Eigen::MatrixXcd three_level_liouvillian(double probe_rabi, double coupling_rabi,
                                                double dp, double dc, double gamma_e,
                                                double gamma_r) {
    const std::complex<double> i(0.0, 1.0);
    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
    h(1, 1) = -dp;
    h(2, 2) = -(dp + dc);
    h(0, 1) = h(1, 0) = -0.5 * probe_rabi;
    h(1, 2) = h(2, 1) = -0.5 * coupling_rabi;

    const auto idx = [](int a, int b) { return 3 * a + b; };
    Eigen::MatrixXcd lv = Eigen::MatrixXcd::Zero(9, 9);
    // Coherent part: -i (H rho - rho H).
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                lv(idx(a, b), idx(c, b)) += -i * h(a, c);
                lv(idx(a, b), idx(a, c)) += i * h(c, b);
            }
    // Decay e->g (rate gamma_e) and r->g (rate gamma_r): population transfer
    // plus coherence damping at half the total width of each index.
    const double w[3] = {0.0, gamma_e, gamma_r};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            lv(idx(a, b), idx(a, b)) += -0.5 * (w[a] + w[b]);
    lv(idx(0, 0), idx(1, 1)) += gamma_e;
    lv(idx(0, 0), idx(2, 2)) += gamma_r;
    return lv;
}

inline Eigen::Matrix3cd three_level_steady_state(double probe_rabi, double coupling_rabi,
                                                 double dp, double dc, double gamma_e,
                                                 double gamma_r) {
    Eigen::MatrixXcd a = three_level_liouvillian(probe_rabi, coupling_rabi, dp, dc, gamma_e,
                                                 gamma_r);
    a.row(0).setZero();
    a(0, 0) = a(0, 4) = a(0, 8) = 1.0; // trace row on the row-major diagonal
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(9);
    rhs(0) = 1.0;
    const Eigen::VectorXcd x = a.fullPivLu().solve(rhs);
    Eigen::Matrix3cd rho;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            rho(r, c) = x(3 * r + c);
    return rho;
}

// Synthetic doublet with optional Gaussian noise from a fixed-seed engine.
struct Doublet {
    std::vector<double> x, y;
};

inline Doublet gaussian_doublet(double c1, double c2, double s1, double s2, double a1, double a2,
                                double offset, double x_lo, double x_hi, int n,
                                double noise_sigma = 0.0, unsigned seed = 0) {
    Doublet d;
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / (n - 1);
        double y = offset + a1 * std::exp(-0.5 * (x - c1) * (x - c1) / (s1 * s1)) +
                   a2 * std::exp(-0.5 * (x - c2) * (x - c2) / (s2 * s2));
        if (noise_sigma > 0.0)
            y += noise_sigma * gauss(rng);
        d.x.push_back(x);
        d.y.push_back(y);
    }
    return d;
}

} // namespace oracles
