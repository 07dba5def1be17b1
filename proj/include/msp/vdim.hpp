#pragma once

#include "msp/graph.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace msp {

struct VdimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A string: a 0-infinity edge whose level-0 end is an unstable vertex with no
// other edge attached.
inline bool is_string_edge(const DecoratedGraph& g, const Edge& e) {
    if (e.cls != EdgeClass::E0Inf) return false;
    const Vertex* a = find_vertex(g, e.endA);
    return a && !a->stable && edge_valency(g, e.endA) == 1;
}

inline bool has_string(const DecoratedGraph& g) {
    for (const auto& e : g.edges)
        if (is_string_edge(g, e)) return true;
    return false;
}

inline bool has_level_one_vertex(const DecoratedGraph& g) {
    for (const auto& v : g.vertices)
        if (v.level == Level::One) return true;
    return false;
}

inline bool has_forgettable_leg(const DecoratedGraph& g) {
    for (const auto& l : g.legs)
        if (l.monodromy == Monodromy::M1 || l.monodromy == Monodromy::OneRho) return true;
    return false;
}

// The hypotheses under which the dimension formulas are derived: no strings,
// no level-1 vertices, no m=1 or rho-type legs.
inline bool special_case(const DecoratedGraph& g) {
    return !has_string(g) && !has_level_one_vertex(g) && !has_forgettable_leg(g);
}

namespace detail {

inline void require_formula_domain(const DecoratedGraph& g) {
    if (has_level_one_vertex(g) || has_forgettable_leg(g))
        throw VdimError("formula domain");
}

inline int dim_D_raw(const DecoratedGraph& g) {
    int s = 0;
    for (const auto& v : g.vertices) {
        if (!v.stable) continue;
        s += 3 * v.genus - 3 + edge_valency(g, v.id) + leg_count(g, v.id);
        s += 3 * v.genus;
    }
    return s + 3 * betti1(g) - static_cast<int>(g.edges.size()) - 3;
}

inline Rat chi_fields_raw(const DecoratedGraph& g) {
    const int gen = total_genus(g);
    auto [d0, dInf] = total_degree(g);
    const Rat degL1 = d0 - dInf;
    const Rat degL2 = g.degL2;
    int nPhi = 0, nRho = 0, nLegs = static_cast<int>(g.legs.size());
    Rat mSum; // sum of m_a/3 over legs with m_a != 0
    for (const auto& l : g.legs) {
        if (l.monodromy == Monodromy::OnePhi) ++nPhi;
        if (l.monodromy == Monodromy::OneRho) ++nRho;
        mSum += Rat(monodromy_m(l.monodromy), 3);
    }
    Rat out = Rat(-3 * nPhi);
    out += 3 * (degL1 + 1 - gen - mSum);
    out += 3 * (degL2 + 1 - gen);
    out += 2 * gen - 2 + nLegs - 3 * degL1 - 3 * degL2 - nRho + 1 - gen;
    return out;
}

inline Rat vdim_raw(const DecoratedGraph& g) {
    int sumEv = 0, nPhi = 0, s0AtStableInf = 0, unstable = 0;
    Rat mTerm;
    for (const auto& v : g.vertices) {
        if (v.stable)
            sumEv += edge_valency(g, v.id);
        else
            ++unstable;
    }
    for (const auto& l : g.legs) {
        if (l.monodromy == Monodromy::OnePhi) ++nPhi;
        const int m = monodromy_m(l.monodromy);
        if (m != 0) mTerm += m - 2;
        const Vertex* v = find_vertex(g, l.vertex);
        if (v->stable && v->level == Level::Infinity && m == 0) ++s0AtStableInf;
    }
    return Rat(sumEv) - 2 * nPhi + s0AtStableInf - mTerm -
           3 * (static_cast<int>(g.edges.size()) - unstable);
}

} // namespace detail

// Dimension of the moduli of curve-and-bundle data underlying the graph.
inline int dim_D(const DecoratedGraph& g) {
    detail::require_formula_domain(g);
    return detail::dim_D_raw(g);
}

// Contribution of deformations of the two auxiliary sections.
inline int chi_mu_nu(const DecoratedGraph& g) {
    int s = 0;
    for (const auto& v : g.vertices)
        if (v.level != Level::One) s += 1 - v.genus;
    return s;
}

// Contribution of deformations of the remaining fields.
inline Rat chi_fields(const DecoratedGraph& g) { return detail::chi_fields_raw(g); }

struct VdimBreakdown {
    int dimD = 0;
    int chiMuNu = 0;
    Rat chiFields;
    Rat total;
};

// Virtual dimension. The closed formula holds on the special case and, by
// direct evaluation, on pure loops (where it is zero). Graphs that fail the
// special case only through strings still get the three components; their
// total is then the component sum (the formula's chain analysis does not
// apply with a positive-dimensional string end).
inline VdimBreakdown vdim(const DecoratedGraph& g) {
    const bool loop = classify(g).isPureLoop;
    if (!loop) detail::require_formula_domain(g);
    VdimBreakdown out;
    out.dimD = detail::dim_D_raw(g);
    out.chiMuNu = chi_mu_nu(g);
    out.chiFields = detail::chi_fields_raw(g);
    if (loop || !has_string(g))
        out.total = detail::vdim_raw(g);
    else
        out.total = Rat(out.dimD) + out.chiMuNu + out.chiFields;
    return out;
}

struct ChainEnd {
    std::string vertex;
    bool stable = false;
};

struct Chain {
    std::vector<std::string> edges;         // E_1 .. E_k in path order
    std::vector<std::string> innerVertices; // v_1 .. v_{k-1}, all unstable
    ChainEnd endA;                          // v_0
    ChainEnd endB;                          // v_k
};

// Decomposes the edge set into maximal paths through unstable 2-valent
// vertices. Pure loops carry no such decomposition.
inline std::vector<Chain> maximal_chains(const DecoratedGraph& g) {
    if (classify(g).isPureLoop) throw VdimError("no chain decomposition");
    auto inner = [&](const std::string& vid) {
        const Vertex* v = find_vertex(g, vid);
        return !v->stable && edge_valency(g, vid) == 2;
    };
    std::set<std::string> used;
    std::vector<Chain> out;
    for (const auto& seed : g.edges) {
        if (used.count(seed.id)) continue;
        // walk to one extreme of the path through inner vertices
        const Edge* first = &seed;
        std::string back = seed.endA; // direction we extend away from
        std::string front = seed.endB;
        std::set<std::string> seen{seed.id};
        for (;;) {
            if (!inner(back)) break;
            const Edge* prev = nullptr;
            for (const auto& e : g.edges) {
                if (e.id == first->id) continue;
                if (e.endA == back || e.endB == back) prev = &e;
            }
            if (!prev || seen.count(prev->id))
                throw VdimError("no chain decomposition"); // closed unstable cycle
            seen.insert(prev->id);
            front = back;
            back = prev->endA == back ? prev->endB : prev->endA;
            first = prev;
        }
        // now walk forward from `first`, starting at vertex `back`
        Chain c;
        c.endA.vertex = back;
        std::string cur = back;
        const Edge* e = first;
        for (;;) {
            used.insert(e->id);
            c.edges.push_back(e->id);
            cur = e->endA == cur ? e->endB : e->endA;
            if (!inner(cur)) break;
            const Edge* next = nullptr;
            for (const auto& e2 : g.edges) {
                if (e2.id == e->id) continue;
                if (e2.endA == cur || e2.endB == cur) next = &e2;
            }
            if (!next || used.count(next->id)) break; // defensive; cycle handled above
            c.innerVertices.push_back(cur);
            e = next;
        }
        c.endB.vertex = cur;
        c.endA.stable = find_vertex(g, c.endA.vertex)->stable;
        c.endB.stable = find_vertex(g, c.endB.vertex)->stable;
        out.push_back(std::move(c));
    }
    return out;
}

// Additive contribution of one maximal chain to the virtual dimension: every
// chain contributes -1. An unstable end must carry exactly one phi-type leg
// (its +3-2 then matches a stable end's +1, so the count is end-independent);
// anything else there has no rigid configuration.
inline Rat chain_contribution(const DecoratedGraph& g, const Chain& c) {
    for (const ChainEnd* end : {&c.endA, &c.endB}) {
        if (end->stable) continue;
        auto ls = legs_at(g, end->vertex);
        if (ls.size() != 1 || ls[0]->monodromy != Monodromy::OnePhi)
            throw VdimError("inconsistent decoration");
    }
    return Rat(-1);
}

// Leg terms of the stripped graph (stable vertices only): -1 per phi-type leg
// at a stable level-infinity vertex, m_a - 2 with the closed formula's sign
// for legs with m_a != 0.
inline Rat residual_leg_terms(const DecoratedGraph& g) {
    Rat s;
    for (const auto& l : g.legs) {
        const Vertex* v = find_vertex(g, l.vertex);
        if (!v->stable) continue;
        if (l.monodromy == Monodromy::OnePhi && v->level == Level::Infinity) s += -1;
        const int m = monodromy_m(l.monodromy);
        if (m != 0) s -= m - 2;
    }
    return s;
}

} // namespace msp
