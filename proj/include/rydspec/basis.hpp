#pragma once

#include <algorithm>
#include <vector>

#include "rydspec/half_int.hpp"
#include "rydspec/errors.hpp"

namespace rydspec {

enum class Manifold { Lower, Upper };

struct ZeemanState {
    Manifold manifold;
    HalfInt m;
    friend bool operator==(const ZeemanState&, const ZeemanState&) = default;
};

enum class BasisOrdering {
    // All lower-manifold states (m ascending), then all upper-manifold states.
    LowerThenUpper,
    // Pi-coupled pairs (lower m, upper m) adjacent, pairs in ascending m,
    // uncoupled spectator states appended last (ascending m, lower manifold
    // first).  In this ordering a linearly z-polarized coupling is manifestly
    // block diagonal in 2x2 blocks plus a zero tail.
    MorrisShore,
};

// Whether the pi transition |J,m> <-> |J',m> carries a nonzero dipole
// element.  For |J-J'| = 1 every |m| <= min(J,J') survives; for J = J' the
// 3-j symbol (J 1 J; -m 0 m) is proportional to m, so m = 0 drops out.
inline bool pi_coupled(HalfInt lower_j, HalfInt upper_j, HalfInt m) {
    if (m.abs() > lower_j || m.abs() > upper_j)
        return false;
    if (lower_j == upper_j && m.twice() == 0)
        return false;
    return true;
}

struct ZeemanBasis {
    HalfInt lower_j;
    HalfInt upper_j;
    BasisOrdering ordering = BasisOrdering::LowerThenUpper;
    std::vector<ZeemanState> states;

    static ZeemanBasis make(HalfInt lower_j, HalfInt upper_j,
                            BasisOrdering ordering = BasisOrdering::LowerThenUpper) {
        if (lower_j.twice() < 0 || upper_j.twice() < 0)
            throw DomainError("ZeemanBasis: J must be >= 0");
        const int dj = upper_j.twice() - lower_j.twice();
        if (dj != -2 && dj != 0 && dj != 2)
            throw DomainError("ZeemanBasis: |J'-J| must be 0 or 1 (got J=" + lower_j.str() +
                              ", J'=" + upper_j.str() + ")");

        ZeemanBasis b{lower_j, upper_j, ordering, {}};
        const auto each_m = [](HalfInt j, auto&& fn) {
            for (int tm = -j.twice(); tm <= j.twice(); tm += 2)
                fn(HalfInt::from_twice(tm));
        };

        if (ordering == BasisOrdering::LowerThenUpper) {
            each_m(lower_j, [&](HalfInt m) { b.states.push_back({Manifold::Lower, m}); });
            each_m(upper_j, [&](HalfInt m) { b.states.push_back({Manifold::Upper, m}); });
        } else {
            const HalfInt jmin = std::min(lower_j, upper_j);
            each_m(jmin, [&](HalfInt m) {
                if (!pi_coupled(lower_j, upper_j, m))
                    return;
                b.states.push_back({Manifold::Lower, m});
                b.states.push_back({Manifold::Upper, m});
            });
            each_m(lower_j, [&](HalfInt m) {
                if (!pi_coupled(lower_j, upper_j, m))
                    b.states.push_back({Manifold::Lower, m});
            });
            each_m(upper_j, [&](HalfInt m) {
                if (!pi_coupled(lower_j, upper_j, m))
                    b.states.push_back({Manifold::Upper, m});
            });
        }
        return b;
    }

    int size() const { return static_cast<int>(states.size()); }

    int index_of(const ZeemanState& s) const {
        for (int i = 0; i < size(); ++i)
            if (states[static_cast<std::size_t>(i)] == s)
                return i;
        return -1;
    }
};

} // namespace rydspec
