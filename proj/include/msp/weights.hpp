#pragma once

#include "msp/graph.hpp"
#include "msp/rat.hpp"

#include <optional>
#include <stdexcept>

namespace msp {

struct WeightError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponent k of the linearization on a degree-d cover of P^1 with fixed-point
// weights w0, w1.
inline Rat linearization_exponent(const Rat& w0, const Rat& w1, const Rat& deg) {
    if (deg == 0) throw WeightError("degenerate linearization");
    return (w0 - w1) / deg;
}

// Same on the P(1,3) cover: total degree of the cover is 3*deg. The tangent
// weights at the two ends are 3k (scheme end) and -k (orbifold end).
inline Rat orbifold_exponent(const Rat& w0, const Rat& w1, const Rat& deg) {
    if (deg == 0) throw WeightError("degenerate linearization");
    return (w0 - w1) / (3 * deg);
}

// Fixed weights of (L1, L2, N) on a component at the given level. At level
// infinity only the constraint wL1 + wN = -1 (with wL2 = 0) is pinned down;
// wL1 and wN individually stay free.
struct BundleWeights {
    std::optional<Rat> wL1;
    Rat wL2;
    std::optional<Rat> wN;
    Rat l1PlusN; // always known: wL1 + wN
};

inline BundleWeights vertex_bundle_weights(Level level) {
    switch (level) {
    case Level::Zero: return {Rat(0), Rat(0), Rat(0), Rat(0)};
    case Level::One: return {Rat(-1), Rat(0), Rat(0), Rat(-1)};
    default: return {std::nullopt, Rat(0), std::nullopt, Rat(-1)};
    }
}

struct EdgeTangentWeights {
    Rat atLow;       // tangent weight at the lower-level endpoint
    Rat atInfOrHigh; // tangent weight at the other endpoint
};

// Tangent weights of the edge curve at its two endpoints, by edge class and
// the two infinity-end flags.
inline EdgeTangentWeights edge_tangent_weights(const Edge& e) {
    const Rat d = edge_d(e);
    switch (e.cls) {
    case EdgeClass::E01:
        return {Rat(1) / d, Rat(-1) / d};
    case EdgeClass::E1Inf: {
        if (e.specialAtInf) {
            if (e.orbifoldAtInf) return {Rat(-1) / d, Rat(1) / (3 * d)};
            return {Rat(-1) / d, Rat(1) / d};
        }
        const Rat q = 3 * d + 1;
        if (q == 0) throw WeightError("weight pole");
        if (e.orbifoldAtInf) return {Rat(-3) / q, Rat(1) / q};
        return {Rat(-3) / q, Rat(3) / q};
    }
    default: {
        const Rat dInf = e.degInf;
        if (e.orbifoldAtInf) return {Rat(1) / dInf, Rat(-1) / (3 * dInf)};
        return {Rat(1) / dInf, Rat(-1) / dInf};
    }
    }
}

// Weight of L1 at the infinity end of a 1-infinity edge, given the
// linearization exponent k. Unused by the certifier; kept for completeness.
inline Rat l1_weight_at_inf(const Rat& k, const Rat& dE) { return -1 - k * dE; }

// Tangent weight of the edge at a given endpoint vertex.
inline Rat tangent_weight_at(const Edge& e, const std::string& vertexId) {
    auto w = edge_tangent_weights(e);
    if (e.endA == vertexId) return w.atLow;
    if (e.endB == vertexId) return w.atInfOrHigh;
    throw WeightError("vertex is not an endpoint of the edge");
}

} // namespace msp
