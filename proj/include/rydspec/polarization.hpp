#pragma once

#include <cmath>
#include <complex>

#include "rydspec/errors.hpp"

namespace rydspec {

// Polarization unit vector in the spherical basis (e_-1, e_0, e_+1) with
// e_0 = z and e_±1 = ∓(x ± iy)/√2.  The scalar contraction with the dipole
// operator is  eps·r = Σ_q (-1)^q eps_{-q} r_q.
struct SphericalPolarization {
    std::complex<double> q_minus{0.0, 0.0};
    std::complex<double> q_zero{1.0, 0.0};
    std::complex<double> q_plus{0.0, 0.0};

    std::complex<double> component(int q) const {
        switch (q) {
        case -1: return q_minus;
        case 0: return q_zero;
        case 1: return q_plus;
        default: throw DomainError("polarization component q must be -1, 0, or +1");
        }
    }

    double norm_sq() const {
        return std::norm(q_minus) + std::norm(q_zero) + std::norm(q_plus);
    }

    bool is_normalized(double tol = 1e-12) const {
        return std::abs(norm_sq() - 1.0) <= tol;
    }

    // Linear polarization tilted by theta from z toward x (rotation about y):
    // eps = z cos(theta) + x sin(theta).  theta = 0 reproduces {0, 1, 0}
    // exactly, so the aligned-field couplings carry no spurious sigma terms.
    static SphericalPolarization linear(double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        SphericalPolarization p;
        p.q_minus = {s * inv_sqrt2, 0.0};
        p.q_zero = {c, 0.0};
        p.q_plus = {-s * inv_sqrt2, 0.0};
        return p;
    }

    static SphericalPolarization linear_z() { return linear(0.0); }
};

} // namespace rydspec
