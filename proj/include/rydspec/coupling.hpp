#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rydspec/basis.hpp"
#include "rydspec/polarization.hpp"
#include "rydspec/wigner.hpp"

namespace rydspec {

// Exact coupled-pair amplitude for the pi transition |J,m> <-> |J',m>, in
// units of the Rabi frequency: the Hamiltonian entry is (rabi/2) times this.
// The sqrt(6) from the reduced-matrix-element normalization
// Omega = e E <J'||r||J> / (sqrt(6) hbar) is folded into the radicand, so a
// two-level pair (J = J' = 1/2, |m| = 1/2) gives exactly ±1.
inline RationalRoot pair_amplitude(HalfInt lower_j, HalfInt upper_j, HalfInt m, int q,
                                   HalfInt m_prime) {
    const RationalRoot d = dipole_reduced(lower_j, m, upper_j, m_prime, q);
    if (d.is_zero())
        return d;
    return d.scaled(1, cpp_rational(6));
}

struct CouplingHamiltonian {
    ZeemanBasis basis;
    double rabi = 0.0;                 // |Omega_0|, rad/s
    SphericalPolarization polarization;
    Eigen::MatrixXcd matrix;           // basis.size() x basis.size(), Hermitian
};

// Microwave-dressing Hamiltonian between two Zeeman manifolds in the RWA,
// H/hbar with zero detuning on the transition.  Rows/columns follow `basis`;
// the (lower m | H | upper m') entry is
//
//   (Omega/2) * sqrt(6) * Σ_q (-1)^q eps_{-q} <J' m'| r_q |J m>_(R=1)
//
// and the mirror entry is its conjugate (the -Omega* placement for a complex
// drive amplitude).
inline CouplingHamiltonian build_hamiltonian(HalfInt lower_j, HalfInt upper_j,
                                             std::complex<double> rabi,
                                             const SphericalPolarization& pol,
                                             BasisOrdering ordering = BasisOrdering::LowerThenUpper) {
    if (!pol.is_normalized(1e-9))
        throw DomainError("build_hamiltonian: polarization vector must be unit norm");
    ZeemanBasis basis = ZeemanBasis::make(lower_j, upper_j, ordering);
    const int n = basis.size();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);

    for (int a = 0; a < n; ++a) {
        const ZeemanState& sa = basis.states[static_cast<std::size_t>(a)];
        if (sa.manifold != Manifold::Lower)
            continue;
        for (int b = 0; b < n; ++b) {
            const ZeemanState& sb = basis.states[static_cast<std::size_t>(b)];
            if (sb.manifold != Manifold::Upper)
                continue;
            // eps·r = Σ_q (-1)^q eps_{-q} r_q; only q = m'-m contributes.
            const int tq = sb.m.twice() - sa.m.twice();
            if (tq != -2 && tq != 0 && tq != 2)
                continue;
            const int q = tq / 2;
            const std::complex<double> eps = pol.component(-q);
            const double parity = (q % 2 == 0) ? 1.0 : -1.0;
            const double amp = pair_amplitude(lower_j, upper_j, sa.m, q, sb.m).value();
            const std::complex<double> entry = 0.5 * rabi * (parity * eps * amp);
            h(a, b) += entry;
            h(b, a) += std::conj(entry);
        }
    }

    return CouplingHamiltonian{std::move(basis), std::abs(rabi), pol, std::move(h)};
}

inline CouplingHamiltonian build_hamiltonian(HalfInt lower_j, HalfInt upper_j, double rabi,
                                             double theta,
                                             BasisOrdering ordering = BasisOrdering::LowerThenUpper) {
    return build_hamiltonian(lower_j, upper_j, std::complex<double>(rabi, 0.0),
                             SphericalPolarization::linear(theta), ordering);
}

struct EigenReport {
    std::vector<double> eigenvalues;          // ascending, all of them
    std::vector<double> distinct_values;      // group representatives, ascending
    std::vector<int> multiplicities;          // parallel to distinct_values
    double dedup_tolerance = 0.0;
    int distinct_count() const { return static_cast<int>(distinct_values.size()); }
};

// Eigenvalues of the dressing Hamiltonian with degeneracy bookkeeping.
// Groups are formed by a single ascending sweep: a gap wider than the
// tolerance starts a new distinct value.
inline EigenReport eigen_report(const CouplingHamiltonian& h,
                                std::optional<double> tolerance = std::nullopt) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw SolverError("eigen_report: eigensolver failed to converge");

    EigenReport rep;
    const auto& ev = solver.eigenvalues();
    rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());

    double scale = 0.0;
    for (double v : rep.eigenvalues)
        scale = std::max(scale, std::abs(v));
    rep.dedup_tolerance = tolerance.value_or(std::max(1e-9 * std::max(scale, h.rabi), 1e-300));
    if (rep.dedup_tolerance <= 0.0)
        throw DomainError("eigen_report: tolerance must be positive");

    double anchor = 0.0; // first eigenvalue of the group being grown
    for (double v : rep.eigenvalues) {
        if (rep.distinct_values.empty() || v - anchor > rep.dedup_tolerance) {
            rep.distinct_values.push_back(v);
            rep.multiplicities.push_back(1);
            anchor = v;
        } else {
            ++rep.multiplicities.back();
        }
    }
    return rep;
}

// Closed-form count of distinct dressed eigenvalues for a linearly polarized
// drive at generic tilt angle, independent of the angle itself:
//
//   N = J + J' + 1   if 2J is odd,
//   N = J + J' + 2   if 2J is even and J != J',
//   N = J + J' + 1   if 2J is even and J = J'.
inline int predict_neig(HalfInt j, HalfInt j_prime) {
    if (j.twice() < 0 || j_prime.twice() < 0)
        throw DomainError("predict_neig: J must be >= 0");
    const int dj = j_prime.twice() - j.twice();
    if (dj != -2 && dj != 0 && dj != 2)
        throw DomainError("predict_neig: |J'-J| must be 0 or 1 (got J=" + j.str() +
                          ", J'=" + j_prime.str() + ")");
    const int sum = (j.twice() + j_prime.twice()) / 2; // J + J', always an integer here
    if (j.twice() % 2 != 0)
        return sum + 1;
    return (j == j_prime) ? sum + 1 : sum + 2;
}

struct TwoLevelBlock {
    HalfInt m;        // shared projection of the pi-coupled pair
    double coupling;  // signed off-diagonal entry (rabi/2 * exact amplitude)
    int lower_index;  // positions in the MorrisShore-ordered basis
    int upper_index;
};

struct BlockDecomposition {
    ZeemanBasis basis; // MorrisShore ordering
    std::vector<TwoLevelBlock> blocks;
    std::vector<int> spectator_indices;
    // Pairs of block indices (i, k) whose couplings match in magnitude
    // exactly, by the m -> -m symmetry of the 3-j coefficients.
    std::vector<std::pair<int, int>> mirror_pairs;
};

// Decompose the z-polarized (theta = 0) dressing problem into independent
// 2x2 blocks.  Every pi-coupled pair forms one block; stretched states of
// the wider manifold (or the m = 0 states when J = J' is an integer) are
// spectators with zero coupling.
inline BlockDecomposition morris_shore_blocks(HalfInt lower_j, HalfInt upper_j, double rabi) {
    if (rabi < 0.0)
        throw DomainError("morris_shore_blocks: rabi must be >= 0");
    BlockDecomposition d{ZeemanBasis::make(lower_j, upper_j, BasisOrdering::MorrisShore), {}, {}, {}};

    // Walk the same pi-coupled m values the MorrisShore ordering paired up.
    // (A blind two-by-two walk would swallow the adjacent m = 0 spectators
    // of an integer J = J' problem as a zero-coupling "pair".)
    const int n = d.basis.size();
    const HalfInt jmin = std::min(lower_j, upper_j);
    int i = 0;
    for (int tm = -jmin.twice(); tm <= jmin.twice(); tm += 2) {
        const HalfInt m = HalfInt::from_twice(tm);
        if (!pi_coupled(lower_j, upper_j, m))
            continue;
        const double amp = pair_amplitude(lower_j, upper_j, m, 0, m).value();
        d.blocks.push_back({m, 0.5 * rabi * amp, i, i + 1});
        i += 2;
    }
    for (; i < n; ++i)
        d.spectator_indices.push_back(i);

    const int nb = static_cast<int>(d.blocks.size());
    for (int a = 0; a < nb; ++a) {
        const int b = nb - 1 - a;
        if (a < b)
            d.mirror_pairs.emplace_back(a, b);
    }
    return d;
}

// Reassemble the decomposition into a full matrix on the same basis; by
// construction this is bit-identical to build_hamiltonian(..., theta = 0,
// MorrisShore) because both sides evaluate the identical exact amplitude
// and the identical double-precision product.
inline Eigen::MatrixXcd assemble_block_diagonal(const BlockDecomposition& d) {
    const int n = d.basis.size();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (const TwoLevelBlock& blk : d.blocks) {
        h(blk.lower_index, blk.upper_index) = blk.coupling;
        h(blk.upper_index, blk.lower_index) = blk.coupling;
    }
    return h;
}

// How many transmission peaks a probe tied to one manifold resolves: every
// distinct dressed eigenvalue appears except that a probe on the narrower
// manifold misses the spectators of the wider one.
inline int predict_peak_count(HalfInt j, HalfInt j_prime, Manifold probe_connects) {
    const int neig = predict_neig(j, j_prime);
    if (j == j_prime)
        return neig;
    const bool probed_is_wider = (probe_connects == Manifold::Lower) ? (j > j_prime)
                                                                     : (j_prime > j);
    return probed_is_wider ? neig : neig - 1;
}

struct InvarianceScan {
    std::vector<double> thetas;
    std::vector<EigenReport> reports;
    double max_spread = 0.0; // max over sorted eigenvalue slots of (max-min) across theta
};

// Sweep the tilt angle and record the spectra; the spread diagnostic makes
// the rotational invariance of the eigenvalues measurable.
inline InvarianceScan invariance_scan(HalfInt lower_j, HalfInt upper_j, double rabi,
                                      const std::vector<double>& thetas) {
    if (thetas.empty())
        throw DomainError("invariance_scan: need at least one angle");
    InvarianceScan scan;
    scan.thetas = thetas;
    scan.reports.reserve(thetas.size());
    for (double th : thetas)
        scan.reports.push_back(eigen_report(build_hamiltonian(lower_j, upper_j, rabi, th)));

    const std::size_t n = scan.reports.front().eigenvalues.size();
    for (std::size_t k = 0; k < n; ++k) {
        double lo = scan.reports.front().eigenvalues[k];
        double hi = lo;
        for (const EigenReport& r : scan.reports) {
            lo = std::min(lo, r.eigenvalues[k]);
            hi = std::max(hi, r.eigenvalues[k]);
        }
        scan.max_spread = std::max(scan.max_spread, hi - lo);
    }
    return scan;
}

} // namespace rydspec
