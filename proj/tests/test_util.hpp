#pragma once

// Shared builders and reference graphs for the test suite, plus a naive
// brute-force enumerator used as an independent oracle for the generator.

#include "msp/enumerate.hpp"
#include "msp/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace testutil {

using namespace msp;

inline Vertex vx(std::string id, Level lv, int genus, Rat d0, Rat dI, bool stable) {
    Vertex v;
    v.id = std::move(id);
    v.level = lv;
    v.genus = genus;
    v.deg0 = d0;
    v.degInf = dI;
    v.stable = stable;
    return v;
}

inline Edge ed(std::string id, std::string a, std::string b, EdgeClass c, Rat d0,
               Rat dI, bool orb = false, bool spec = false) {
    Edge e;
    e.id = std::move(id);
    e.endA = std::move(a);
    e.endB = std::move(b);
    e.cls = c;
    e.deg0 = d0;
    e.degInf = dI;
    e.orbifoldAtInf = orb;
    e.specialAtInf = spec;
    return e;
}

inline Leg leg(std::string id, std::string v, int pos, Monodromy m) {
    Leg l;
    l.id = std::move(id);
    l.vertex = std::move(v);
    l.position = pos;
    l.monodromy = m;
    return l;
}

// A standalone 0-infinity edge between two unstable end vertices, with one
// broad marking at the infinity end.
inline DecoratedGraph string_graph() {
    DecoratedGraph g;
    g.vertices.push_back(vx("v0", Level::Zero, 0, 0, 0, false));
    g.vertices.push_back(vx("vi", Level::Infinity, 0, 0, 0, false));
    g.edges.push_back(ed("e", "v0", "vi", EdgeClass::E0Inf, 1, 1, false, true));
    g.legs.push_back(leg("l0", "vi", 0, Monodromy::Broad));
    return g;
}

// Two unstable vertices joined by two parallel 0-infinity edges.
inline DecoratedGraph pure_loop2() {
    DecoratedGraph g;
    g.vertices.push_back(vx("u0", Level::Zero, 0, 0, 0, false));
    g.vertices.push_back(vx("ui", Level::Infinity, 0, 0, 0, false));
    g.edges.push_back(ed("e0", "u0", "ui", EdgeClass::E0Inf, 1, 1, false, true));
    g.edges.push_back(ed("e1", "u0", "ui", EdgeClass::E0Inf, 1, 1, false, true));
    return g;
}

// Path v0 --(01, d)-- q --(1-infinity, -d)-- w with q an unstable balanced
// vertex and w a stable infinity vertex.
inline DecoratedGraph balanced_chain(int d = 1) {
    DecoratedGraph g;
    g.vertices.push_back(vx("v0", Level::Zero, 0, 0, 0, false));
    g.vertices.push_back(vx("q", Level::One, 0, 0, 0, false));
    g.vertices.push_back(vx("w", Level::Infinity, 1, 0, 0, true));
    g.edges.push_back(ed("e01", "v0", "q", EdgeClass::E01, d, 0));
    g.edges.push_back(ed("e1i", "q", "w", EdgeClass::E1Inf, 0, d, false, true));
    return g;
}

// One 0-infinity edge between two stable vertices (both ends rigid).
inline DecoratedGraph stable_edge(int genusA = 1, int genusB = 1) {
    DecoratedGraph g;
    g.vertices.push_back(vx("a", Level::Zero, genusA, 0, 0, true));
    g.vertices.push_back(vx("b", Level::Infinity, genusB, 0, 0, true));
    g.edges.push_back(ed("e", "a", "b", EdgeClass::E0Inf, 1, 1, false, true));
    return g;
}

inline DecoratedGraph relabeled(const DecoratedGraph& g, const std::string& prefix) {
    DecoratedGraph out = g;
    for (auto& v : out.vertices) v.id = prefix + v.id;
    for (auto& e : out.edges) {
        e.id = prefix + e.id;
        e.endA = prefix + e.endA;
        e.endB = prefix + e.endB;
    }
    for (auto& l : out.legs) {
        l.id = prefix + l.id;
        l.vertex = prefix + l.vertex;
    }
    return out;
}

// Canonical key that treats the legs as an unordered multiset: brute-force
// minimum over all vertex permutations of an encoding with sorted leg
// entries. Only usable on small graphs.
inline std::string unordered_canonical(const DecoratedGraph& g) {
    const std::size_t n = g.vertices.size();
    std::map<std::string, std::size_t> byId;
    for (std::size_t i = 0; i < n; ++i) byId[g.vertices[i].id] = i;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::vector<std::size_t> pos(n);
        for (std::size_t i = 0; i < n; ++i) pos[perm[i]] = i;
        std::string s = "V:";
        std::vector<std::string> vs(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vertex& v = g.vertices[i];
            vs[pos[i]] = level_str(v.level) + "," + std::to_string(v.genus) + "," +
                         rat_str(v.deg0) + "," + rat_str(v.degInf) + "," +
                         (v.stable ? "s" : "u") + "," +
                         (v.hour ? std::to_string(*v.hour) : "-");
        }
        for (const auto& t : vs) s += t + "|";
        std::vector<std::string> es;
        for (const auto& e : g.edges)
            es.push_back(std::to_string(pos[byId[e.endA]]) + ">" +
                         std::to_string(pos[byId[e.endB]]) + "," +
                         edge_class_str(e.cls) + "," + rat_str(e.deg0) + "," +
                         rat_str(e.degInf) + "," + (e.orbifoldAtInf ? "o" : ".") +
                         (e.specialAtInf ? "s" : "."));
        std::sort(es.begin(), es.end());
        s += "E:";
        for (const auto& t : es) s += t + "|";
        std::vector<std::string> ls;
        for (const auto& l : g.legs)
            ls.push_back(std::to_string(pos[byId[l.vertex]]) +
                         monodromy_str(l.monodromy));
        std::sort(ls.begin(), ls.end());
        s += "L:";
        for (const auto& t : ls) s += t + "|";
        s += "D:" + rat_str(g.degL2);
        if (best.empty() || s < best) best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Independent brute-force generator over all labeled graphs within the caps,
// filtered by validity, flatness and realizability, deduplicated by the
// unordered canonical key. Vertex degrees are zero and stability is derived,
// matching the generator's documented search space.
inline std::set<std::string> naive_flat_graph_keys(const EnumCaps& caps) {
    std::set<std::string> keys;
    const int maxV = caps.maxEdges + 1;

    for (int n = 1; n <= maxV; ++n) {
        std::vector<int> level(n, 0);
        std::function<void(int)> levelRec = [&](int vi) {
            if (vi < n) {
                for (int lv = 0; lv < 3; ++lv) {
                    level[vi] = lv;
                    levelRec(vi + 1);
                }
                return;
            }
            // admissible vertex pairs (distinct levels)
            std::vector<std::pair<int, int>> pairs;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (level[i] != level[j])
                        pairs.push_back(level[i] < level[j] ? std::make_pair(i, j)
                                                            : std::make_pair(j, i));
            const int mLo = n == 1 ? 0 : n - 1;
            for (int m = mLo; m <= caps.maxEdges; ++m) {
                std::vector<int> sel(m, 0);
                std::function<void(int, int)> edgeRec = [&](int ei, int from) {
                    if (ei < m) {
                        for (int k = from; k < static_cast<int>(pairs.size()); ++k) {
                            sel[ei] = k;
                            edgeRec(ei + 1, k);
                        }
                        return;
                    }
                    // degree decorations: E01 d; E1Inf h (degInf = h/3); E0Inf k
                    std::vector<int> deg(m, 1);
                    std::function<void(int)> degRec = [&](int di) {
                        if (di < m) {
                            auto [a, b] = pairs[sel[di]];
                            const int s = level[a] + level[b];
                            const int hi = s == 3 ? 3 * caps.maxDegree : caps.maxDegree;
                            for (int d = 1; d <= hi; ++d) {
                                deg[di] = d;
                                degRec(di + 1);
                            }
                            return;
                        }
                        // total-degree cap, componentwise
                        Rat tot0, totI;
                        for (int i = 0; i < m; ++i) {
                            auto [a, b] = pairs[sel[i]];
                            const int s = level[a] + level[b];
                            if (s == 1) tot0 += deg[i];
                            if (s == 3) totI += Rat(deg[i], 3);
                            if (s == 2) {
                                tot0 += deg[i];
                                totI += deg[i];
                            }
                        }
                        if (tot0 > caps.maxDegree || totI > caps.maxDegree) return;
                        std::vector<int> genus(n, 0);
                        std::function<void(int, int)> genRec = [&](int vi2, int left) {
                            if (vi2 < n) {
                                for (int gv = 0; gv <= left; ++gv) {
                                    genus[vi2] = gv;
                                    genRec(vi2 + 1, left - gv);
                                }
                                return;
                            }
                            std::vector<std::array<int, 4>> legc(
                                n, std::array<int, 4>{0, 0, 0, 0});
                            std::function<void(int, int)> legRec = [&](int slot,
                                                                       int left2) {
                                if (slot < 4 * n) {
                                    for (int k = 0; k <= left2; ++k) {
                                        legc[slot / 4][slot % 4] = k;
                                        legRec(slot + 1, left2 - k);
                                    }
                                    legc[slot / 4][slot % 4] = 0;
                                    return;
                                }
                                DecoratedGraph g;
                                for (int v = 0; v < n; ++v) {
                                    int pts = 0;
                                    for (int i = 0; i < m; ++i)
                                        pts += (pairs[sel[i]].first == v) +
                                               (pairs[sel[i]].second == v);
                                    for (int r = 0; r < 4; ++r) pts += legc[v][r];
                                    Vertex vv;
                                    vv.id = "v" + std::to_string(v);
                                    vv.level = level[v] == 0
                                                   ? Level::Zero
                                                   : (level[v] == 1 ? Level::One
                                                                    : Level::Infinity);
                                    vv.genus = genus[v];
                                    vv.stable = genus[v] > 0 || pts >= 3;
                                    g.vertices.push_back(vv);
                                }
                                for (int i = 0; i < m; ++i) {
                                    auto [a, b] = pairs[sel[i]];
                                    const int s = level[a] + level[b];
                                    Edge e;
                                    e.id = "e" + std::to_string(i);
                                    e.endA = "v" + std::to_string(a);
                                    e.endB = "v" + std::to_string(b);
                                    if (s == 1) {
                                        e.cls = EdgeClass::E01;
                                        e.deg0 = deg[i];
                                    } else if (s == 3) {
                                        e.cls = EdgeClass::E1Inf;
                                        e.degInf = Rat(deg[i], 3);
                                        e.orbifoldAtInf = deg[i] % 3 != 0;
                                    } else {
                                        e.cls = EdgeClass::E0Inf;
                                        e.deg0 = deg[i];
                                        e.degInf = deg[i];
                                    }
                                    g.edges.push_back(e);
                                }
                                int p = 0;
                                const Monodromy ranks[4] = {
                                    Monodromy::OnePhi, Monodromy::OneRho,
                                    Monodromy::M1, Monodromy::M2};
                                for (int v = 0; v < n; ++v)
                                    for (int r = 0; r < 4; ++r)
                                        for (int k = 0; k < legc[v][r]; ++k) {
                                            g.legs.push_back(
                                                leg("l" + std::to_string(p),
                                                    "v" + std::to_string(v), p,
                                                    ranks[r]));
                                            ++p;
                                        }
                                for (auto& e : g.edges) {
                                    if (e.cls == EdgeClass::E01) continue;
                                    e.specialAtInf =
                                        find_vertex(g, e.endB)->stable ||
                                        edge_valency(g, e.endB) >= 2 ||
                                        leg_count(g, e.endB) >= 1;
                                }
                                if (num_components(g) != 1) return;
                                if (total_genus(g) > caps.maxGenus) return;
                                if (!is_valid(g)) return;
                                if (!classify(g).isFlat) return;
                                if (!realizable_ends(g)) return;
                                keys.insert(unordered_canonical(g));
                            };
                            legRec(0, caps.maxLegs);
                        };
                        genRec(0, caps.maxGenus);
                    };
                    degRec(0);
                };
                edgeRec(0, 0);
            }
        };
        levelRec(0);
    }
    return keys;
}

} // namespace testutil
