#pragma once

#include "msp/graph.hpp"
#include "msp/json_io.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace msp {

// Byte-string invariant of the isomorphism class (id relabeling only; leg
// order and all decorations preserved). Brute-force minimization over vertex
// orderings, restricted to permutations within classes of equal local
// invariants.
inline std::string canonical_form(const DecoratedGraph& g) {
    const std::size_t n = g.vertices.size();
    std::vector<std::string> key(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex& v = g.vertices[i];
        key[i] = level_str(v.level) + "," + std::to_string(v.genus) + "," +
                 rat_str(v.deg0) + "," + rat_str(v.degInf) + "," +
                 (v.stable ? "s" : "u") + "," +
                 (v.hour ? std::to_string(*v.hour) : "-") + "," +
                 std::to_string(edge_valency(g, v.id)) + "," +
                 std::to_string(leg_count(g, v.id));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });

    auto encode = [&](const std::vector<std::size_t>& ord) {
        std::vector<std::size_t> pos(n); // vertex index -> canonical index
        for (std::size_t i = 0; i < n; ++i) pos[ord[i]] = i;
        std::map<std::string, std::size_t> byId;
        for (std::size_t i = 0; i < n; ++i) byId[g.vertices[i].id] = i;
        std::string s = "V:";
        for (std::size_t i = 0; i < n; ++i) s += key[ord[i]] + "|";
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
        std::vector<const Leg*> legs;
        for (const auto& l : g.legs) legs.push_back(&l);
        std::sort(legs.begin(), legs.end(),
                  [](const Leg* a, const Leg* b) { return a->position < b->position; });
        s += "L:";
        for (const Leg* l : legs)
            s += std::to_string(pos[byId[l->vertex]]) + monodromy_str(l->monodromy) + "|";
        s += "D:" + rat_str(g.degL2);
        return s;
    };

    // permute only within runs of equal keys
    std::string best = encode(order);
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && key[order[j]] == key[order[i]]) ++j;
        if (j - i > 1) runs.push_back({i, j});
        i = j;
    }
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
        if (r == runs.size()) {
            std::string s = encode(order);
            if (s < best) best = s;
            return;
        }
        auto [lo, hi] = runs[r];
        std::sort(order.begin() + lo, order.begin() + hi);
        do {
            rec(r + 1);
        } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
    };
    rec(0);
    return best;
}

// L1 exists on a component only if its degree matches the monodromies of the
// component's special points: 3*d_v must agree mod 3 with the sum of leg
// monodromies at v plus, for each orbifold node with an edge, the monodromy
// of the vertex branch there (the negative of the edge branch's).
inline bool monodromy_degree_consistent(const DecoratedGraph& g) {
    for (const auto& v : g.vertices) {
        Rat dv3 = 3 * vertex_d(v);
        long t = static_cast<long>(rat_num(dv3) % 3); // dv3 is an integer
        for (const auto& l : g.legs)
            if (l.vertex == v.id) t -= monodromy_m(l.monodromy);
        for (const auto& e : g.edges) {
            if (e.cls != EdgeClass::E1Inf || !e.orbifoldAtInf || e.endB != v.id)
                continue;
            Rat h = 3 * e.degInf;
            t -= static_cast<long>(rat_num(h) % 3);
        }
        if (t % 3 != 0) return false;
    }
    return true;
}

// Whether the graph's decorations admit a rigid field configuration. Three
// rules: an unstable 1-valent infinity end of a 0-infinity edge must carry
// exactly one phi-type leg (anything else, or nothing, has no fixed field
// over the edge); no unstable infinity vertex may have all of its 0-infinity
// edges ending on collapsing level-0 stumps (string removal would strand
// it); and vertex monodromies must be compatible with the L1 degrees.
inline bool realizable_ends(const DecoratedGraph& g) {
    if (!monodromy_degree_consistent(g)) return false;
    auto e0infCount = [&](const std::string& vid) {
        int c = 0;
        for (const auto& e : g.edges)
            c += e.cls == EdgeClass::E0Inf && (e.endA == vid || e.endB == vid);
        return c;
    };
    for (const auto& v : g.vertices) {
        if (v.level != Level::Infinity || v.stable) continue;
        auto inc = incident_edges(g, v.id);
        if (inc.size() == 1 && inc[0]->cls == EdgeClass::E0Inf) {
            auto ls = legs_at(g, v.id);
            if (ls.size() != 1 || ls[0]->monodromy != Monodromy::OnePhi) return false;
        }
        int n0i = 0, collapsing = 0;
        for (const Edge* e : inc) {
            if (e->cls != EdgeClass::E0Inf) continue;
            ++n0i;
            const Vertex* w = find_vertex(g, e->endA);
            if (!w->stable && e0infCount(w->id) == 1) ++collapsing;
        }
        if (n0i >= 1 && collapsing == n0i) return false;
    }
    return true;
}

struct EnumCaps {
    int maxGenus = 0;
    int maxEdges = 0;
    int maxLegs = 0;
    int maxDegree = 1; // bound on the total degree pair |d(graph)|
};

struct EnumOptions {
    bool requireFlat = true;
    bool realizableOnly = true;
    bool perEdgeDegrees = false; // reinterpret maxDegree as a per-edge bound
    bool pureLoopsOnly = false;
    bool requireIrregular = false;
    bool levelOneFree = false;  // only levels 0/infinity (special-case family)
    bool verifyEmitted = false; // re-check validate() on every emission
};

namespace detail_enum {

// monodromy ranks: 0 phi, 1 rho, 2 m1, 3 m2
inline Monodromy rank_monodromy(int r) {
    switch (r) {
    case 0: return Monodromy::OnePhi;
    case 1: return Monodromy::OneRho;
    case 2: return Monodromy::M1;
    default: return Monodromy::M2;
    }
}

struct Topology {
    int n = 0;
    std::vector<int> level;              // 0, 1, 2(infinity), sorted
    std::vector<std::pair<int, int>> ep; // edge endpoints, lower level first
    std::vector<int> cls;                // 0: E01, 1: E1Inf, 2: E0Inf
    std::vector<std::vector<int>> autos; // vertex permutations fixing it
    std::vector<int> valency;
    std::vector<std::vector<int>> e1iAt; // 1-infinity edge indices at each vertex
};

struct Candidate {
    std::vector<int> edeg; // E01: d; E1Inf: h (degInf = h/3); E0Inf: k
    std::vector<int> genus;
    std::vector<std::array<int, 4>> legc;
};

inline std::vector<int> signature(const Topology& t, const Candidate& c,
                                  const std::vector<int>* perm) {
    std::vector<int> sig;
    sig.reserve(t.n * 5 + t.ep.size() * 4);
    auto at = [&](int v) { return perm ? (*perm)[v] : v; };
    std::vector<int> gv(t.n), lc(t.n * 4);
    for (int v = 0; v < t.n; ++v) {
        gv[at(v)] = c.genus[v];
        for (int r = 0; r < 4; ++r) lc[at(v) * 4 + r] = c.legc[v][r];
    }
    sig.insert(sig.end(), gv.begin(), gv.end());
    sig.insert(sig.end(), lc.begin(), lc.end());
    std::vector<std::array<int, 4>> es;
    for (std::size_t i = 0; i < t.ep.size(); ++i) {
        int a = at(t.ep[i].first), b = at(t.ep[i].second);
        if (a > b) std::swap(a, b);
        es.push_back({a, b, t.cls[i], c.edeg[i]});
    }
    std::sort(es.begin(), es.end());
    for (const auto& e : es) sig.insert(sig.end(), e.begin(), e.end());
    return sig;
}

inline bool orbit_minimal(const Topology& t, const Candidate& c) {
    if (t.autos.size() <= 1) return true;
    const auto sig = signature(t, c, nullptr);
    for (const auto& p : t.autos) {
        bool id = true;
        for (int i = 0; i < t.n; ++i)
            if (p[i] != i) {
                id = false;
                break;
            }
        if (id) continue;
        if (signature(t, c, &p) < sig) return false;
    }
    return true;
}

inline DecoratedGraph assemble(const Topology& t, const Candidate& c,
                               const std::vector<bool>& stable) {
    DecoratedGraph g;
    for (int v = 0; v < t.n; ++v) {
        Vertex vx;
        vx.id = "v" + std::to_string(v);
        vx.level = t.level[v] == 0 ? Level::Zero
                                   : (t.level[v] == 1 ? Level::One : Level::Infinity);
        vx.genus = c.genus[v];
        vx.stable = stable[v];
        g.vertices.push_back(vx);
    }
    for (std::size_t i = 0; i < t.ep.size(); ++i) {
        Edge e;
        e.id = "e" + std::to_string(i);
        e.endA = "v" + std::to_string(t.ep[i].first);
        e.endB = "v" + std::to_string(t.ep[i].second);
        if (t.cls[i] == 0) {
            e.cls = EdgeClass::E01;
            e.deg0 = c.edeg[i];
        } else if (t.cls[i] == 1) {
            e.cls = EdgeClass::E1Inf;
            e.degInf = Rat(c.edeg[i], 3);
            e.orbifoldAtInf = c.edeg[i] % 3 != 0;
        } else {
            e.cls = EdgeClass::E0Inf;
            e.deg0 = c.edeg[i];
            e.degInf = c.edeg[i];
        }
        g.edges.push_back(e);
    }
    int p = 0;
    for (int v = 0; v < t.n; ++v)
        for (int r = 0; r < 4; ++r)
            for (int k = 0; k < c.legc[v][r]; ++k) {
                Leg l;
                l.id = "l" + std::to_string(p);
                l.vertex = "v" + std::to_string(v);
                l.position = p++;
                l.monodromy = rank_monodromy(r);
                g.legs.push_back(l);
            }
    // infinity-end flags are determined by the endpoint configuration
    for (auto& e : g.edges) {
        if (e.cls == EdgeClass::E01) continue;
        e.specialAtInf = find_vertex(g, e.endB)->stable ||
                         edge_valency(g, e.endB) >= 2 || leg_count(g, e.endB) >= 1;
    }
    return g;
}

inline bool connected(int n, const std::vector<std::pair<int, int>>& ep) {
    if (n <= 1) return true;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    };
    for (const auto& [a, b] : ep) p[find(a)] = find(b);
    int r = find(0);
    for (int i = 1; i < n; ++i)
        if (find(i) != r) return false;
    return true;
}

// level-preserving permutations of 0..n-1 (levels sorted, so runs)
inline void level_perms(const std::vector<int>& level,
                        const std::function<void(const std::vector<int>&)>& fn) {
    const int n = static_cast<int>(level.size());
    std::vector<std::pair<int, int>> runs;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && level[j] == level[i]) ++j;
        runs.push_back({i, j});
        i = j;
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
        if (r == runs.size()) {
            fn(perm);
            return;
        }
        auto [lo, hi] = runs[r];
        std::sort(perm.begin() + lo, perm.begin() + hi);
        do {
            rec(r + 1);
        } while (std::next_permutation(perm.begin() + lo, perm.begin() + hi));
    };
    rec(0);
}

inline std::vector<std::array<int, 3>>
sorted_edge_key(const std::vector<std::pair<int, int>>& ep, const std::vector<int>& cls,
                const std::vector<int>& perm) {
    std::vector<std::array<int, 3>> key;
    for (std::size_t i = 0; i < ep.size(); ++i) {
        int a = perm[ep[i].first], b = perm[ep[i].second];
        if (a > b) std::swap(a, b);
        key.push_back({a, b, cls[i]});
    }
    std::sort(key.begin(), key.end());
    return key;
}

} // namespace detail_enum

// Core generator; calls emit for every graph in the stream, in a
// deterministic (not canonical-sorted) order.
inline void enumerate_graphs(const EnumCaps& caps, const EnumOptions& opt,
                             const std::function<void(const DecoratedGraph&)>& emit) {
    using namespace detail_enum;

    auto decorate = [&](const Topology& t, int h1) {
        const int m = static_cast<int>(t.ep.size());
        Candidate c;
        c.edeg.assign(m, 0);
        c.genus.assign(t.n, 0);
        c.legc.assign(t.n, {0, 0, 0, 0});

        auto finish = [&]() {
            // derive stability (degrees are all zero in the search space)
            std::vector<bool> stable(t.n);
            for (int v = 0; v < t.n; ++v) {
                int pts = t.valency[v];
                for (int r = 0; r < 4; ++r) pts += c.legc[v][r];
                stable[v] = c.genus[v] > 0 || pts >= 3;
                if (!stable[v] && t.valency[v] == 0) return; // isolated point
                // phi-type legs cannot sit on a stable level-0 vertex
                if (stable[v] && t.level[v] == 0 && c.legc[v][0] > 0) return;
            }
            if (opt.pureLoopsOnly) {
                for (int v = 0; v < t.n; ++v)
                    if (stable[v]) return;
            }
            if (opt.requireFlat || opt.pureLoopsOnly) {
                // balanced vertex: unstable 2-valent level-1 vertex between an
                // 01 edge and a 1-infinity edge with cancelling degrees and a
                // special infinity end
                for (int v = 0; v < t.n; ++v) {
                    if (t.level[v] != 1 || stable[v] || t.valency[v] != 2) continue;
                    int e01 = -1, e1i = -1;
                    for (int i = 0; i < m; ++i) {
                        if (t.ep[i].first != v && t.ep[i].second != v) continue;
                        if (t.cls[i] == 0) e01 = i;
                        if (t.cls[i] == 1) e1i = i;
                    }
                    if (e01 < 0 || e1i < 0) continue;
                    if (3 * c.edeg[e01] != c.edeg[e1i]) continue;
                    const int w = t.ep[e1i].second;
                    int wlegs = 0;
                    for (int r = 0; r < 4; ++r) wlegs += c.legc[w][r];
                    if (stable[w] || t.valency[w] >= 2 || wlegs >= 1) return;
                }
            }
            if (!orbit_minimal(t, c)) return;
            DecoratedGraph g = assemble(t, c, stable);
            if (opt.realizableOnly && !realizable_ends(g)) return;
            if (opt.pureLoopsOnly && !classify(g).isPureLoop) return;
            if (opt.verifyEmitted && !is_valid(g)) return;
            emit(g);
        };

        std::function<void(int, int)> legRec = [&](int v, int left) {
            if (v == t.n) {
                finish();
                return;
            }
            const bool atInf = t.level[v] == 2;
            std::function<void(int, int)> pick = [&](int r, int rem) {
                if (r == 4) {
                    if (opt.realizableOnly) {
                        // vertex monodromy sum must vanish mod 3 (zero L1 degree)
                        int s = c.legc[v][2] + 2 * c.legc[v][3];
                        if (atInf)
                            for (int i : t.e1iAt[v]) s += c.edeg[i];
                        if (s % 3 != 0) return;
                    }
                    legRec(v + 1, rem);
                    return;
                }
                if (r == 1 && atInf) { // no rho-type legs at level infinity
                    pick(r + 1, rem);
                    return;
                }
                for (int k = 0; k <= rem; ++k) {
                    c.legc[v][r] = k;
                    pick(r + 1, rem - k);
                }
                c.legc[v][r] = 0;
            };
            pick(0, left);
        };

        std::function<void(int, int)> genusRec = [&](int v, int left) {
            if (v == t.n) {
                legRec(0, caps.maxLegs);
                return;
            }
            for (int gv = 0; gv <= left; ++gv) {
                c.genus[v] = gv;
                genusRec(v + 1, left - gv);
            }
            c.genus[v] = 0;
        };

        // budgets in thirds of a degree
        std::function<void(int, int, int)> edgeRec = [&](int i, int b0, int bi) {
            if (i == m) {
                genusRec(0, caps.maxGenus - h1);
                return;
            }
            // keep parallel-edge degrees non-decreasing
            int lo = 1;
            if (i > 0 && t.ep[i] == t.ep[i - 1] && t.cls[i] == t.cls[i - 1])
                lo = c.edeg[i - 1];
            if (opt.perEdgeDegrees) {
                const int hi = t.cls[i] == 1 ? 3 * caps.maxDegree : caps.maxDegree;
                for (int d = lo; d <= hi; ++d) {
                    c.edeg[i] = d;
                    edgeRec(i + 1, b0, bi);
                }
                return;
            }
            if (t.cls[i] == 0) {
                for (int d = lo; 3 * d <= b0; ++d) {
                    c.edeg[i] = d;
                    edgeRec(i + 1, b0 - 3 * d, bi);
                }
            } else if (t.cls[i] == 1) {
                for (int h = lo; h <= bi; ++h) {
                    c.edeg[i] = h;
                    edgeRec(i + 1, b0, bi - h);
                }
            } else {
                for (int k = lo; 3 * k <= b0 && 3 * k <= bi; ++k) {
                    c.edeg[i] = k;
                    edgeRec(i + 1, b0 - 3 * k, bi - 3 * k);
                }
            }
        };
        edgeRec(0, 3 * caps.maxDegree, 3 * caps.maxDegree);
    };

    // single-vertex graphs
    if (!opt.pureLoopsOnly && !opt.requireIrregular) {
        for (int lv : {0, 1, 2}) {
            if (opt.levelOneFree && lv == 1) continue;
            Topology t;
            t.n = 1;
            t.level = {lv};
            t.valency = {0};
            t.autos = {{0}};
            t.e1iAt = {{}};
            decorate(t, 0);
        }
    }

    for (int m = 1; m <= caps.maxEdges; ++m) {
        for (int n = 2; n <= m + 1; ++n) {
            const int h1 = m - n + 1;
            if (h1 > caps.maxGenus) continue;
            for (int n0 = 0; n0 <= n; ++n0)
                for (int n1 = 0; n1 + n0 <= n; ++n1) {
                    if (opt.levelOneFree && n1 > 0) continue;
                    const int nI = n - n0 - n1;
                    std::vector<int> level;
                    for (int i = 0; i < n0; ++i) level.push_back(0);
                    for (int i = 0; i < n1; ++i) level.push_back(1);
                    for (int i = 0; i < nI; ++i) level.push_back(2);

                    std::vector<std::pair<int, int>> pairs;
                    std::vector<int> pcls;
                    for (int i = 0; i < n; ++i)
                        for (int j = i + 1; j < n; ++j) {
                            if (level[i] == level[j]) continue;
                            pairs.push_back({i, j});
                            int s = level[i] + level[j];
                            pcls.push_back(s == 1 ? 0 : (s == 3 ? 1 : 2));
                        }
                    if (pairs.empty()) continue;

                    std::vector<int> sel(m, 0);
                    std::function<void(int, int)> pickEdges = [&](int i, int from) {
                        if (i == m) {
                            std::vector<std::pair<int, int>> ep;
                            std::vector<int> cls;
                            for (int k : sel) {
                                ep.push_back(pairs[k]);
                                cls.push_back(pcls[k]);
                            }
                            if (!connected(n, ep)) return;
                            if (opt.requireIrregular &&
                                std::count(cls.begin(), cls.end(), 2) == 0)
                                return;
                            if (opt.pureLoopsOnly) {
                                std::vector<int> val(n, 0);
                                for (const auto& [a, b] : ep) {
                                    ++val[a];
                                    ++val[b];
                                }
                                for (int v = 0; v < n; ++v)
                                    if (val[v] != 2) return;
                            }
                            // keep only the lexicographically minimal labeling
                            auto self = sorted_edge_key(ep, cls, [&] {
                                std::vector<int> idp(n);
                                std::iota(idp.begin(), idp.end(), 0);
                                return idp;
                            }());
                            bool minimal = true;
                            std::vector<std::vector<int>> autos;
                            level_perms(level, [&](const std::vector<int>& p) {
                                if (!minimal) return;
                                auto k = sorted_edge_key(ep, cls, p);
                                if (k < self) minimal = false;
                                else if (k == self) autos.push_back(p);
                            });
                            if (!minimal) return;
                            Topology t;
                            t.n = n;
                            t.level = level;
                            t.ep = ep;
                            t.cls = cls;
                            t.autos = std::move(autos);
                            t.valency.assign(n, 0);
                            for (const auto& [a, b] : ep) {
                                ++t.valency[a];
                                ++t.valency[b];
                            }
                            t.e1iAt.assign(n, {});
                            for (std::size_t i = 0; i < ep.size(); ++i)
                                if (cls[i] == 1)
                                    t.e1iAt[ep[i].second].push_back(
                                        static_cast<int>(i));
                            decorate(t, h1);
                            return;
                        }
                        for (int k = from; k < static_cast<int>(pairs.size()); ++k) {
                            sel[i] = k;
                            pickEdges(i + 1, k);
                        }
                    };
                    pickEdges(0, 0);
                }
        }
    }
}

// Public stream: one representative per canonical-form class, sorted by
// canonical form.
inline std::vector<DecoratedGraph> enumerate_flat_graphs(const EnumCaps& caps,
                                                         const EnumOptions& opt = {}) {
    std::vector<std::pair<std::string, DecoratedGraph>> out;
    enumerate_graphs(caps, opt, [&](const DecoratedGraph& g) {
        out.push_back({canonical_form(g), g});
    });
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              out.end());
    std::vector<DecoratedGraph> gs;
    gs.reserve(out.size());
    for (auto& [k, g] : out) gs.push_back(std::move(g));
    return gs;
}

// Totals keyed by (isRegular, isPureLoop).
inline std::map<std::pair<bool, bool>, long>
count_by_class(const std::vector<DecoratedGraph>& stream) {
    std::map<std::pair<bool, bool>, long> out;
    for (const auto& g : stream) {
        auto c = classify(g);
        ++out[{c.isRegular, c.isPureLoop}];
    }
    return out;
}

} // namespace msp
