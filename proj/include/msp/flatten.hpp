#pragma once

#include "msp/graph.hpp"
#include "msp/weights.hpp"

#include <stdexcept>
#include <string>

namespace msp {

struct FlattenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::pair<const Vertex*, std::vector<const Edge*>>
balance_candidate(const DecoratedGraph& g, const std::string& vertexId) {
    const Vertex* v = find_vertex(g, vertexId);
    if (!v) throw FlattenError("not a candidate node");
    auto inc = incident_edges(g, vertexId);
    if (v->stable || inc.size() != 2) throw FlattenError("not a candidate node");
    return {v, inc};
}

} // namespace detail

// Combinatorial criterion: a 2-valent unstable vertex is balanced iff it sits
// at level 1 between one 01 edge and one 1-infinity edge with cancelling
// degrees, and the infinity end of the latter is a node or marking.
inline bool is_T_balanced(const DecoratedGraph& g, const std::string& vertexId) {
    auto [v, inc] = detail::balance_candidate(g, vertexId);
    return balanced_at(g, *v, *inc[0], *inc[1]);
}

// Independent check: the two edge tangent weights at the vertex sum to zero.
inline bool balance_oracle(const DecoratedGraph& g, const std::string& vertexId) {
    auto [v, inc] = detail::balance_candidate(g, vertexId);
    (void)v;
    return tangent_weight_at(*inc[0], vertexId) + tangent_weight_at(*inc[1], vertexId) == 0;
}

// Replaces every balanced vertex (with its 01 and 1-infinity edges) by a
// single 0-infinity edge carrying degree pair (dInf, dInf), where dInf is the
// N-degree of the consumed 1-infinity edge. Repeats until none remains.
inline DecoratedGraph flatten(const DecoratedGraph& g) {
    DecoratedGraph cur = g;
    for (;;) {
        const Vertex* bal = nullptr;
        std::vector<const Edge*> inc;
        for (const auto& v : cur.vertices) {
            if (v.stable) continue;
            auto e = incident_edges(cur, v.id);
            if (e.size() != 2) continue;
            if (balanced_at(cur, v, *e[0], *e[1])) {
                bal = &v;
                inc = e;
                break;
            }
        }
        if (!bal) return cur;

        const Edge* e01 = inc[0]->cls == EdgeClass::E01 ? inc[0] : inc[1];
        const Edge* e1inf = inc[0]->cls == EdgeClass::E1Inf ? inc[0] : inc[1];
        Edge merged;
        merged.id = e01->id + "*" + e1inf->id;
        merged.endA = e01->endA;   // level-0 outer endpoint
        merged.endB = e1inf->endB; // level-infinity outer endpoint
        merged.cls = EdgeClass::E0Inf;
        merged.deg0 = e1inf->degInf;
        merged.degInf = e1inf->degInf;
        merged.orbifoldAtInf = false;
        merged.specialAtInf = e1inf->specialAtInf;

        DecoratedGraph next;
        next.degL2 = cur.degL2;
        for (const auto& v : cur.vertices)
            if (v.id != bal->id) next.vertices.push_back(v);
        for (const auto& e : cur.edges)
            if (e.id != e01->id && e.id != e1inf->id) next.edges.push_back(e);
        next.edges.push_back(merged);
        next.legs = cur.legs;
        cur = std::move(next);
    }
}

} // namespace msp
