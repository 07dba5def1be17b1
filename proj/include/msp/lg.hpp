#pragma once

#include "msp/rat.hpp"

#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace msp {

struct LgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Index of a hybrid LG-theory invariant at level infinity: genus, number m
// of zeta3^2-type markings among k total markings, and the L2 degree.
struct LGIndex {
    int g = 0;
    int m = 0;
    int k = 0;
    int dPrime = 0;
};

// m must agree with 2g-2 mod 3 for the spin bundle to exist.
inline std::vector<int> lg_admissible_m(int g, int mMax) {
    if (g < 0 || mMax < 0) throw LgError("negative index");
    const int r = ((2 * g - 2) % 3 + 3) % 3;
    std::vector<int> out;
    for (int m = 0; m <= mMax; ++m)
        if (m % 3 == r) out.push_back(m);
    return out;
}

inline void check_lg_index(const LGIndex& ix) {
    if (ix.g < 0 || ix.m < 0 || ix.k < 0 || ix.dPrime < 0)
        throw LgError("negative index");
    if (ix.m > ix.k) throw LgError("more zeta3^2 markings than markings");
    if ((ix.m % 3) != (((2 * ix.g - 2) % 3 + 3) % 3))
        throw LgError("monodromy count incompatible with genus");
}

// Virtual dimension of the LG moduli: one per marking.
inline int lg_vdim(const LGIndex& ix) {
    check_lg_index(ix);
    return ix.k;
}

// All (m, dPrime) slots of the potential series up to the given bounds, with
// k = m (only zeta3^2 markings carry insertions in the series).
inline std::vector<LGIndex> potential_index_set(int g, int mMax, int dMax) {
    if (dMax < 0) throw LgError("negative index");
    std::vector<LGIndex> out;
    for (int m : lg_admissible_m(g, mMax))
        for (int d = 0; d <= dMax; ++d) out.push_back({g, m, m, d});
    return out;
}

// Tabulation slot for the invariants N_{g,m,d'}; values are supplied by
// callers, never computed here.
using LgTable = std::map<std::tuple<int, int, int>, Rat>;

} // namespace msp
