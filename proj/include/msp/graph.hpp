#pragma once

#include "msp/rat.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace msp {

enum class Level { Zero, One, Infinity };

// Marking types at legs. OnePhi/OneRho are the two narrow refinements of
// m = 0; M1 and M2 are the m = 1, 2 sectors. Broad is an m = 0 marking that
// is neither narrow refinement; it only occurs on unstable ends of
// zero-infinity edges (the standalone-edge moduli computation needs it).
enum class Monodromy { OnePhi, OneRho, M1, M2, Broad };

inline int monodromy_m(Monodromy m) {
    switch (m) {
    case Monodromy::M1: return 1;
    case Monodromy::M2: return 2;
    default: return 0;
    }
}

enum class EdgeClass { E01, E1Inf, E0Inf };

struct Vertex {
    std::string id;
    Level level = Level::Zero;
    int genus = 0;
    Rat deg0;   // degree of L1 (x) N on the component
    Rat degInf; // degree of N on the component
    bool stable = false;
    std::optional<int> hour; // N-MSP decoration, all vertices or none
};

struct Edge {
    std::string id;
    std::string endA; // lower-level endpoint
    std::string endB; // higher-level endpoint
    EdgeClass cls = EdgeClass::E01;
    Rat deg0;
    Rat degInf;
    bool orbifoldAtInf = false; // infinity end is an orbifold point
    bool specialAtInf = false;  // infinity end is a node or a marking
};

struct Leg {
    std::string id;
    std::string vertex;
    int position = 0; // ordinal in the ordered leg list
    Monodromy monodromy = Monodromy::OnePhi;
};

struct DecoratedGraph {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges; // a multiset; parallel edges allowed
    std::vector<Leg> legs;   // ordered
    Rat degL2;               // graph-level degree of L2, default 0
};

inline Rat vertex_d(const Vertex& v) { return v.deg0 - v.degInf; }
inline Rat edge_d(const Edge& e) { return e.deg0 - e.degInf; }

inline const Vertex* find_vertex(const DecoratedGraph& g, const std::string& id) {
    for (const auto& v : g.vertices)
        if (v.id == id) return &v;
    return nullptr;
}

inline Vertex* find_vertex(DecoratedGraph& g, const std::string& id) {
    for (auto& v : g.vertices)
        if (v.id == id) return &v;
    return nullptr;
}

inline const Edge* find_edge(const DecoratedGraph& g, const std::string& id) {
    for (const auto& e : g.edges)
        if (e.id == id) return &e;
    return nullptr;
}

// Edge valency, counting multiplicity of parallel edges.
inline int edge_valency(const DecoratedGraph& g, const std::string& vid) {
    int n = 0;
    for (const auto& e : g.edges)
        n += (e.endA == vid) + (e.endB == vid);
    return n;
}

inline int leg_count(const DecoratedGraph& g, const std::string& vid) {
    int n = 0;
    for (const auto& l : g.legs)
        n += (l.vertex == vid);
    return n;
}

inline std::vector<const Edge*> incident_edges(const DecoratedGraph& g, const std::string& vid) {
    std::vector<const Edge*> out;
    for (const auto& e : g.edges)
        if (e.endA == vid || e.endB == vid) out.push_back(&e);
    return out;
}

inline std::vector<const Leg*> legs_at(const DecoratedGraph& g, const std::string& vid) {
    std::vector<const Leg*> out;
    for (const auto& l : g.legs)
        if (l.vertex == vid) out.push_back(&l);
    return out;
}

namespace detail {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

inline std::map<std::string, std::size_t> vertex_index(const DecoratedGraph& g) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) idx[g.vertices[i].id] = i;
    return idx;
}

} // namespace detail

inline int num_components(const DecoratedGraph& g) {
    if (g.vertices.empty()) return 0;
    auto idx = detail::vertex_index(g);
    detail::UnionFind uf(g.vertices.size());
    for (const auto& e : g.edges) {
        auto a = idx.find(e.endA);
        auto b = idx.find(e.endB);
        if (a != idx.end() && b != idx.end()) uf.unite(a->second, b->second);
    }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) roots.insert(uf.find(i));
    return static_cast<int>(roots.size());
}

// First Betti number of the underlying topological graph.
inline int betti1(const DecoratedGraph& g) {
    return static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) +
           num_components(g);
}

struct Violation {
    std::string element; // offending vertex/edge/leg id
    std::string message;
};

using ValidationReport = std::vector<Violation>;

inline ValidationReport validate(const DecoratedGraph& g) {
    ValidationReport rep;
    auto bad = [&rep](const std::string& id, const std::string& msg) {
        rep.push_back({id, msg});
    };

    std::set<std::string> vids, eids, lids;
    for (const auto& v : g.vertices)
        if (!vids.insert(v.id).second) bad(v.id, "duplicate vertex id");
    for (const auto& e : g.edges)
        if (!eids.insert(e.id).second) bad(e.id, "duplicate edge id");
    for (const auto& l : g.legs)
        if (!lids.insert(l.id).second) bad(l.id, "duplicate leg id");

    for (const auto& e : g.edges) {
        if (!vids.count(e.endA)) bad(e.id, "edge endpoint refers to missing vertex");
        if (!vids.count(e.endB)) bad(e.id, "edge endpoint refers to missing vertex");
    }
    for (const auto& l : g.legs)
        if (!vids.count(l.vertex)) bad(l.id, "leg anchor refers to missing vertex");
    if (!rep.empty()) return rep; // structure broken; later checks assume references

    if (!is_third_integer(g.degL2)) bad("", "degL2 denominator must be 1 or 3");

    const bool anyHour = std::any_of(g.vertices.begin(), g.vertices.end(),
                                     [](const Vertex& v) { return v.hour.has_value(); });

    for (const auto& v : g.vertices) {
        if (v.genus < 0) bad(v.id, "genus must be non-negative");
        if (!is_third_integer(v.deg0) || !is_third_integer(v.degInf))
            bad(v.id, "degree denominator must be 1 or 3");
        if (v.level == Level::One && (v.deg0 != 0 || v.degInf != 0))
            bad(v.id, "level-1 vertex must have zero degrees");
        if (anyHour && !v.hour)
            bad(v.id, "hour must be present on every vertex or on none");
        if (v.hour && *v.hour < 1) bad(v.id, "hour must be at least 1");
        if (!v.stable) {
            if (v.genus != 0) bad(v.id, "unstable vertex must have genus 0");
            if (v.deg0 != 0 || v.degInf != 0)
                bad(v.id, "unstable vertex must have zero degrees");
            int ev = edge_valency(g, v.id);
            int lc = leg_count(g, v.id);
            if (ev < 1 || ev > 2)
                bad(v.id, "unstable vertex must have one or two incident edges");
            if (ev + lc > 2)
                bad(v.id, "unstable vertex has too many special points");
        }
    }

    for (const auto& e : g.edges) {
        const Vertex* a = find_vertex(g, e.endA);
        const Vertex* b = find_vertex(g, e.endB);
        if (!is_third_integer(e.deg0) || !is_third_integer(e.degInf))
            bad(e.id, "degree denominator must be 1 or 3");
        const Rat d = edge_d(e);
        auto endpoints_are = [&](Level la, Level lb) {
            return a->level == la && b->level == lb;
        };
        switch (e.cls) {
        case EdgeClass::E01:
            if (!endpoints_are(Level::Zero, Level::One))
                bad(e.id, "01 edge must join a level-0 and a level-1 vertex");
            if (!(d > 0)) bad(e.id, "01 edge degree must be positive");
            if (!is_integer(d)) bad(e.id, "01 edge degree must be an integer");
            if (e.degInf != 0) bad(e.id, "01 edge must have zero N-degree");
            if (e.orbifoldAtInf || e.specialAtInf)
                bad(e.id, "infinity-end flags only apply to edges touching level infinity");
            break;
        case EdgeClass::E1Inf:
            if (!endpoints_are(Level::One, Level::Infinity))
                bad(e.id, "1-infinity edge must join a level-1 and a level-infinity vertex");
            if (!(d < 0)) bad(e.id, "1-infinity edge degree must be negative");
            if (!e.orbifoldAtInf && !is_integer(d))
                bad(e.id, "1-infinity edge with scheme infinity end needs integer degree");
            if (e.deg0 != 0) bad(e.id, "1-infinity edge must have zero L1(x)N-degree");
            // a twisted curve carries orbifold structure only at nodes and
            // markings, so an orbifold infinity end is always special
            if (e.orbifoldAtInf && !e.specialAtInf)
                bad(e.id, "orbifold infinity end must be a node or a marking");
            break;
        case EdgeClass::E0Inf:
            if (!endpoints_are(Level::Zero, Level::Infinity))
                bad(e.id, "0-infinity edge must join a level-0 and a level-infinity vertex");
            if (d != 0) bad(e.id, "0-infinity edge must have equal degrees");
            if (!(e.degInf > 0)) bad(e.id, "0-infinity edge N-degree must be positive");
            if (!is_integer(e.degInf))
                bad(e.id, "0-infinity edge N-degree must be an integer");
            if (e.orbifoldAtInf)
                bad(e.id, "0-infinity edge has a scheme point at its infinity end");
            break;
        }
        // The infinity end is a node or a marking exactly when something else
        // meets the curve there, so the flag is determined by the endpoint.
        if (e.cls != EdgeClass::E01 && b && b->level == Level::Infinity) {
            bool special =
                b->stable || edge_valency(g, e.endB) >= 2 || leg_count(g, e.endB) >= 1;
            if (e.specialAtInf != special)
                bad(e.id, special ? "infinity end meets a node or marking; flag must be set"
                                  : "infinity end is free; flag must be clear");
        }
    }

    {
        std::set<int> positions;
        for (const auto& l : g.legs) positions.insert(l.position);
        bool ok = positions.size() == g.legs.size();
        if (ok) {
            int want = 0;
            for (int p : positions)
                if (p != want++) ok = false;
        }
        if (!ok && !g.legs.empty())
            bad(g.legs.front().id, "leg positions must be exactly 0..n-1 and distinct");
    }
    for (const auto& l : g.legs) {
        const Vertex* v = find_vertex(g, l.vertex);
        if (l.monodromy == Monodromy::OneRho && v->level == Level::Infinity)
            bad(l.id, "rho-type leg cannot attach at level infinity");
        if (l.monodromy == Monodromy::OnePhi && v->level == Level::Zero && v->stable)
            bad(l.id, "phi-type leg cannot attach to a stable level-0 vertex");
        if (l.monodromy == Monodromy::Broad &&
            !(v->level == Level::Infinity && !v->stable))
            bad(l.id, "broad leg only attaches to an unstable level-infinity vertex");
    }

    return rep;
}

inline bool is_valid(const DecoratedGraph& g) { return validate(g).empty(); }

inline int total_genus(const DecoratedGraph& g) {
    int s = 0;
    for (const auto& v : g.vertices) s += v.genus;
    return s + betti1(g);
}

inline std::pair<Rat, Rat> total_degree(const DecoratedGraph& g) {
    Rat d0, dInf;
    for (const auto& v : g.vertices) {
        d0 += v.deg0;
        dInf += v.degInf;
    }
    for (const auto& e : g.edges) {
        d0 += e.deg0;
        dInf += e.degInf;
    }
    return {d0, dInf};
}

inline std::vector<Monodromy> monodromy_vector(const DecoratedGraph& g) {
    std::vector<const Leg*> ordered;
    for (const auto& l : g.legs) ordered.push_back(&l);
    std::sort(ordered.begin(), ordered.end(),
              [](const Leg* a, const Leg* b) { return a->position < b->position; });
    std::vector<Monodromy> out;
    for (const Leg* l : ordered) out.push_back(l->monodromy);
    return out;
}

// Combinatorial balance criterion for an unstable 2-valent vertex: level 1,
// one edge of each of the two classes meeting level 1, cancelling degrees,
// and the infinity end of the outgoing edge sits at a node or marking.
inline bool balanced_at(const DecoratedGraph& g, const Vertex& v,
                        const Edge& e1, const Edge& e2) {
    if (v.level != Level::One) return false;
    const Edge *e01 = nullptr, *e1inf = nullptr;
    for (const Edge* e : {&e1, &e2}) {
        if (e->cls == EdgeClass::E01) e01 = e;
        if (e->cls == EdgeClass::E1Inf) e1inf = e;
    }
    (void)g;
    if (!e01 || !e1inf) return false;
    if (edge_d(*e01) + edge_d(*e1inf) != 0) return false;
    return e1inf->specialAtInf;
}

inline bool has_balanced_vertex(const DecoratedGraph& g) {
    for (const auto& v : g.vertices) {
        if (v.stable) continue;
        auto inc = incident_edges(g, v.id);
        if (inc.size() != 2) continue;
        if (balanced_at(g, v, *inc[0], *inc[1])) return true;
    }
    return false;
}

struct Classification {
    bool isFlat = false;
    bool isRegular = false;
    bool isPureLoop = false;
};

inline Classification classify(const DecoratedGraph& g) {
    Classification c;
    c.isRegular = std::none_of(g.edges.begin(), g.edges.end(), [](const Edge& e) {
        return e.cls == EdgeClass::E0Inf;
    });
    c.isFlat = !has_balanced_vertex(g);
    bool loop = !g.vertices.empty() && g.legs.empty();
    for (const auto& v : g.vertices) {
        if (v.stable || edge_valency(g, v.id) != 2) loop = false;
    }
    c.isPureLoop = loop;
    return c;
}

} // namespace msp
