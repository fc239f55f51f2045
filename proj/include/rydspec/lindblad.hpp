#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "rydspec/coupling.hpp"
#include "rydspec/ladder.hpp"

namespace rydspec {

// Basis layout for the ladder density matrix, fixed everywhere:
//   index 0                  |g>
//   index 1                  |e>
//   index 2 .. 2+ns-1        nS Zeeman states, m ascending
//   index 2+ns .. end        nP Zeeman states, m ascending
struct LadderBasis {
    int ns; // nS multiplicity, 2J+1
    int np; // nP multiplicity, 2J'+1
    int size() const { return 2 + ns + np; }
    int g() const { return 0; }
    int e() const { return 1; }
    int rs(int k) const { return 2 + k; }
    int rp(int k) const { return 2 + ns + k; }
};

inline LadderBasis ladder_basis(const LadderConfig& cfg) {
    return LadderBasis{cfg.rydberg_lower.twice() + 1, cfg.rydberg_upper.twice() + 1};
}

// RWA Hamiltonian (units of hbar) in the rotating frame of the three drives,
// for one velocity class.  Diagonal entries accumulate the detunings down
// the ladder; counter-propagating probe and coupling shift oppositely:
//
//   E_e  = -(Delta_p - k_p v)
//   E_rS = -(Delta_p - k_p v) - (Delta_c + k_c v)
//   E_rP = E_rS - Delta_mw
//
// Laser couplings enter with the -Omega/2 sign convention (dipole gain
// -d·E), which makes the weak-probe absorption -Im rho_ge positive.
inline Eigen::MatrixXcd ladder_hamiltonian(const LadderConfig& cfg, double velocity = 0.0) {
    const LadderBasis b = ladder_basis(cfg);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(b.size(), b.size());

    const double kp = two_pi / cfg.probe_wavelength;
    const double kc = two_pi / cfg.coupling_wavelength;
    const double dp = cfg.probe_detuning - kp * velocity;
    const double dc = cfg.coupling_detuning + kc * velocity;

    h(b.e(), b.e()) = -dp;
    for (int k = 0; k < b.ns; ++k)
        h(b.rs(k), b.rs(k)) = -(dp + dc);
    for (int k = 0; k < b.np; ++k)
        h(b.rp(k), b.rp(k)) = -(dp + dc + cfg.mw_detuning);

    h(b.g(), b.e()) = -0.5 * cfg.probe_rabi;
    h(b.e(), b.g()) = -0.5 * cfg.probe_rabi;

    const auto weights = cfg.normalized_weights();
    for (int k = 0; k < b.ns; ++k) {
        const std::complex<double> w = weights[static_cast<std::size_t>(k)];
        if (w == std::complex<double>(0.0, 0.0))
            continue;
        h(b.e(), b.rs(k)) = -0.5 * cfg.coupling_rabi * std::conj(w);
        h(b.rs(k), b.e()) = -0.5 * cfg.coupling_rabi * w;
    }

    // Microwave dressing block between the two Rydberg manifolds.
    if (cfg.mw_rabi != 0.0) {
        const CouplingHamiltonian mw = build_hamiltonian(cfg.rydberg_lower, cfg.rydberg_upper,
                                                         cfg.mw_rabi, cfg.mw_theta);
        // mw.basis is LowerThenUpper: nS states first, then nP.
        for (int a = 0; a < b.ns; ++a)
            for (int c = 0; c < b.np; ++c) {
                h(b.rs(a), b.rp(c)) = mw.matrix(a, b.ns + c);
                h(b.rp(c), b.rs(a)) = mw.matrix(b.ns + c, a);
            }
    }
    return h;
}

inline std::vector<Eigen::MatrixXcd> collapse_operators(const LadderConfig& cfg) {
    const LadderBasis b = ladder_basis(cfg);
    const int n = b.size();
    std::vector<Eigen::MatrixXcd> ops;

    const auto decay_to_ground = [&](int from, double rate) {
        if (rate <= 0.0)
            return;
        Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
        c(b.g(), from) = std::sqrt(rate);
        ops.push_back(std::move(c));
    };
    decay_to_ground(b.e(), cfg.decay_e);
    for (int k = 0; k < b.ns; ++k)
        decay_to_ground(b.rs(k), cfg.decay_rs);
    for (int k = 0; k < b.np; ++k)
        decay_to_ground(b.rp(k), cfg.decay_rp);

    if (cfg.extra_dephasing > 0.0) {
        // Pure dephasing of each level above the ground state.
        for (int i = 1; i < n; ++i) {
            Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
            c(i, i) = std::sqrt(cfg.extra_dephasing);
            ops.push_back(std::move(c));
        }
    }
    return ops;
}

// Liouvillian superoperator on column-major vec(rho):
//   L = -i (I (x) H - H^T (x) I) + sum_k [ conj(C) (x) C
//         - 1/2 I (x) C^H C - 1/2 (C^H C)^T (x) I ].
inline Eigen::MatrixXcd liouvillian(const LadderConfig& cfg, double velocity = 0.0) {
    cfg.validate();
    const Eigen::MatrixXcd h = ladder_hamiltonian(cfg, velocity);
    const int n = static_cast<int>(h.rows());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    const std::complex<double> im(0.0, 1.0);

    Eigen::MatrixXcd lv = -im * (Eigen::kroneckerProduct(id, h) -
                                 Eigen::kroneckerProduct(h.transpose(), id));
    for (const Eigen::MatrixXcd& c : collapse_operators(cfg)) {
        const Eigen::MatrixXcd cdc = c.adjoint() * c;
        lv += Eigen::kroneckerProduct(c.conjugate(), c).eval();
        lv -= 0.5 * Eigen::kroneckerProduct(id, cdc).eval();
        lv -= 0.5 * Eigen::kroneckerProduct(cdc.transpose(), id).eval();
    }
    return lv;
}

// Unique trace-one kernel vector of the Liouvillian, returned as a density
// matrix.  The singular linear system is closed by replacing the equation
// for the (g,g) component with the trace constraint; a cheap LU solve is
// accepted when its residual is small, otherwise a rank-revealing QR both
// checks kernel dimension and recomputes the solution.
inline Eigen::MatrixXcd steady_state(const Eigen::MatrixXcd& lv) {
    const int n2 = static_cast<int>(lv.rows());
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n2))));
    if (n * n != n2 || lv.cols() != n2)
        throw DomainError("steady_state: Liouvillian must be N^2 x N^2");

    const double scale = std::max(1.0, lv.cwiseAbs().maxCoeff());
    Eigen::MatrixXcd a = lv;
    // Replace the rho(0,0) row (vec index 0 in column-major layout) with the
    // trace constraint, scaled to the Liouvillian's magnitude so the pivot
    // sizes below stay comparable across rows.
    a.row(0).setZero();
    for (int k = 0; k < n; ++k)
        a(0, k * n + k) = scale;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n2);
    rhs(0) = scale;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    Eigen::VectorXcd x = lu.solve(rhs);
    x += lu.solve(rhs - a * x); // one refinement step sharpens ill-scaled solves
    bool ok = x.allFinite() && (a * x - rhs).norm() <= 1e-8 * scale;

    // A small residual alone does not prove uniqueness: when the kernel has
    // dimension > 1 the solve can land on one member of a whole solution
    // family. A collapsed U diagonal flags that case.
    const Eigen::VectorXd udiag = lu.matrixLU().diagonal().cwiseAbs();
    const bool suspect_singular = udiag.minCoeff() <= 1e-10 * udiag.maxCoeff();

    if (!ok || suspect_singular) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
        qr.setThreshold(1e-10);
        if (qr.rank() < n2)
            throw DegenerateSteadyStateError(
                "steady_state: stationary state is not unique (Liouvillian kernel dimension > 1)");
        x = qr.solve(rhs);
        if (!x.allFinite() || (a * x - rhs).norm() > 1e-6 * scale)
            throw SolverError("steady_state: linear solve failed");
    }

    Eigen::MatrixXcd rho = Eigen::Map<Eigen::MatrixXcd>(x.data(), n, n);
    rho = 0.5 * (rho + rho.adjoint()).eval(); // exact kernel vectors are Hermitian
    const double tr = rho.trace().real();
    if (!(std::abs(tr) > 0.5))
        throw SolverError("steady_state: kernel vector has near-zero trace");
    rho /= tr; // the solve pins the trace near 1; dividing makes it exact
    return rho;
}

// Probe-transition absorption coefficient in dimensionless form:
// -2 Gamma_e Im(rho_ge) / Omega_p, i.e. Im(chi) up to a positive prefactor.
inline double probe_response(const Eigen::MatrixXcd& rho, const LadderConfig& cfg) {
    if (cfg.probe_rabi == 0.0)
        return 0.0;
    return -2.0 * cfg.decay_e * std::imag(rho(0, 1)) / cfg.probe_rabi;
}

} // namespace rydspec
