#pragma once

#include "msp/graph.hpp"
#include "msp/vdim.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace msp {

struct ReduceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReductionStep {
    enum class Kind { Decouple, Trim, SplitComponents, ForgetLeg, RemoveString };
    Kind kind = Kind::Decouple;
    std::vector<std::string> elements; // ids the step acted on
};

inline std::string step_kind_str(ReductionStep::Kind k) {
    switch (k) {
    case ReductionStep::Kind::Decouple: return "decouple";
    case ReductionStep::Kind::Trim: return "trim";
    case ReductionStep::Kind::SplitComponents: return "split";
    case ReductionStep::Kind::ForgetLeg: return "forget-leg";
    default: return "remove-string";
    }
}

struct Certificate {
    enum class Verdict { PureLoop, Vanishes, RegularNotCovered, Invalid };
    Verdict verdict = Verdict::Invalid;
    std::vector<ReductionStep> trace;
    std::vector<Rat> terminalVdims;
    std::string reason; // set for Invalid
};

inline std::string verdict_str(Certificate::Verdict v) {
    switch (v) {
    case Certificate::Verdict::PureLoop: return "PureLoop";
    case Certificate::Verdict::Vanishes: return "Vanishes";
    case Certificate::Verdict::RegularNotCovered: return "RegularNotCovered";
    default: return "Invalid";
    }
}

// The infinity-end flag equals "something else meets the curve there"; after
// any surgery it is recomputed from the surrounding graph.
inline void recompute_special_flags(DecoratedGraph& g) {
    for (auto& e : g.edges) {
        if (e.cls == EdgeClass::E01) continue;
        const Vertex* b = find_vertex(g, e.endB);
        if (!b || b->level != Level::Infinity) continue;
        e.specialAtInf =
            b->stable || edge_valency(g, e.endB) >= 2 || leg_count(g, e.endB) >= 1;
    }
}

inline void renumber_legs(DecoratedGraph& g) {
    std::stable_sort(g.legs.begin(), g.legs.end(),
                     [](const Leg& a, const Leg& b) { return a.position < b.position; });
    int p = 0;
    for (auto& l : g.legs) l.position = p++;
}

namespace detail {

inline const std::string& level_one_end(const Edge& e) {
    // E01 edges point low-to-high, so the level-1 end is endB; for
    // 1-infinity edges it is endA.
    return e.cls == EdgeClass::E01 ? e.endB : e.endA;
}

// A leaf in the pipeline sense: the level-1 end is an unstable 1-valent
// vertex. Leaves are trimmed; everything else through level 1 is decoupled.
inline bool is_level_one_leaf(const DecoratedGraph& g, const Edge& e) {
    const Vertex* v = find_vertex(g, level_one_end(e));
    return !v->stable && edge_valency(g, v->id) == 1;
}

inline int next_position(const DecoratedGraph& g) {
    int p = 0;
    for (const auto& l : g.legs) p = std::max(p, l.position + 1);
    return p;
}

inline void erase_vertex(DecoratedGraph& g, const std::string& vid) {
    g.vertices.erase(std::remove_if(g.vertices.begin(), g.vertices.end(),
                                    [&](const Vertex& v) { return v.id == vid; }),
                     g.vertices.end());
    g.legs.erase(std::remove_if(g.legs.begin(), g.legs.end(),
                                [&](const Leg& l) { return l.vertex == vid; }),
                 g.legs.end());
}

inline void erase_edge(DecoratedGraph& g, const std::string& eid) {
    g.edges.erase(std::remove_if(g.edges.begin(), g.edges.end(),
                                 [&](const Edge& e) { return e.id == eid; }),
                  g.edges.end());
}

} // namespace detail

// Detaches the edge from its level-1 vertex v1 and reattaches it to a fresh
// unstable twin v1'; both v1 and v1' receive a phi-type leg at the end of the
// leg order. After this the edge is a leaf.
inline DecoratedGraph decouple(const DecoratedGraph& g, const std::string& edgeId) {
    const Edge* e = find_edge(g, edgeId);
    if (!e || e->cls == EdgeClass::E0Inf)
        throw ReduceError("only edges through level 1 are decoupled");
    if (detail::is_level_one_leaf(g, *e))
        throw ReduceError("leaf edges are trimmed, not decoupled");

    DecoratedGraph out = g;
    const std::string v1id = detail::level_one_end(*e);
    const Vertex* v1 = find_vertex(out, v1id);

    Vertex twin;
    twin.id = "d:" + e->id;
    twin.level = Level::One;
    twin.stable = false;
    twin.hour = v1->hour;
    out.vertices.push_back(twin);

    for (auto& oe : out.edges) {
        if (oe.id != e->id) continue;
        (oe.cls == EdgeClass::E01 ? oe.endB : oe.endA) = twin.id;
    }

    int p = detail::next_position(out);
    out.legs.push_back({"l:" + e->id, v1id, p, Monodromy::OnePhi});
    out.legs.push_back({"l':" + e->id, twin.id, p + 1, Monodromy::OnePhi});
    recompute_special_flags(out);
    return out;
}

// Decouples every edge through level 1 whose level-1 end is not already an
// unstable 1-valent vertex. Records one step per decoupled edge.
inline DecoratedGraph decouple_all(const DecoratedGraph& g,
                                   std::vector<ReductionStep>* trace = nullptr) {
    DecoratedGraph cur = g;
    for (;;) {
        const Edge* pick = nullptr;
        for (const auto& e : cur.edges) {
            if (e.cls == EdgeClass::E0Inf) continue;
            if (!detail::is_level_one_leaf(cur, e)) {
                pick = &e;
                break;
            }
        }
        if (!pick) return cur;
        std::string id = pick->id;
        cur = decouple(cur, id);
        if (trace) trace->push_back({ReductionStep::Kind::Decouple, {id}});
    }
}

// Removes every leaf edge through level 1, one at a time. A trimmed edge
// leaves a rho-type leg on a level-0 stump or a phi-type leg on a
// level-infinity stump; when both ends have become unstable 1-valent the
// whole isolated piece is removed instead.
inline DecoratedGraph trim(const DecoratedGraph& g,
                           std::vector<ReductionStep>* trace = nullptr) {
    for (const auto& e : g.edges)
        if (e.cls != EdgeClass::E0Inf && !detail::is_level_one_leaf(g, e))
            throw ReduceError("not fully decoupled");

    DecoratedGraph cur = g;
    for (;;) {
        const Edge* pick = nullptr;
        for (const auto& e : cur.edges)
            if (e.cls != EdgeClass::E0Inf) {
                pick = &e;
                break;
            }
        if (!pick) break;

        const Edge e = *pick;
        const std::string v1id = detail::level_one_end(e);
        const std::string outer = e.cls == EdgeClass::E01 ? e.endA : e.endB;
        const Vertex* ov = find_vertex(cur, outer);
        const bool keepOuter = ov->stable || edge_valency(cur, outer) >= 2;

        detail::erase_edge(cur, e.id);
        detail::erase_vertex(cur, v1id);
        if (keepOuter) {
            Monodromy m =
                e.cls == EdgeClass::E01 ? Monodromy::OneRho : Monodromy::OnePhi;
            cur.legs.push_back({"t:" + e.id, outer, detail::next_position(cur), m});
        } else {
            detail::erase_vertex(cur, outer);
        }
        if (trace) trace->push_back({ReductionStep::Kind::Trim, {e.id}});
    }
    recompute_special_flags(cur);
    renumber_legs(cur);
    return cur;
}

struct SplitResult {
    DecoratedGraph gammaZeroInf; // components with no level-1 vertex
    DecoratedGraph gammaOne;     // isolated level-1 vertices
};

// Partitions a graph with no edges through level 1 into its level-{0,inf}
// part and its level-1 part. The L2 degree stays with the former.
inline SplitResult split_components(const DecoratedGraph& g) {
    for (const auto& e : g.edges)
        if (e.cls != EdgeClass::E0Inf)
            throw ReduceError("split requires all edges through level 1 removed");
    SplitResult out;
    out.gammaZeroInf.degL2 = g.degL2;
    for (const auto& v : g.vertices)
        (v.level == Level::One ? out.gammaOne : out.gammaZeroInf).vertices.push_back(v);
    out.gammaZeroInf.edges = g.edges;
    for (const auto& l : g.legs) {
        const Vertex* v = find_vertex(g, l.vertex);
        (v->level == Level::One ? out.gammaOne : out.gammaZeroInf).legs.push_back(l);
    }
    renumber_legs(out.gammaZeroInf);
    renumber_legs(out.gammaOne);
    return out;
}

// Forgets every m=1 and rho-type leg.
inline DecoratedGraph forget_legs(const DecoratedGraph& g,
                                  std::vector<ReductionStep>* trace = nullptr) {
    DecoratedGraph out = g;
    std::vector<std::string> dropped;
    out.legs.erase(std::remove_if(out.legs.begin(), out.legs.end(),
                                  [&](const Leg& l) {
                                      if (l.monodromy == Monodromy::M1 ||
                                          l.monodromy == Monodromy::OneRho) {
                                          dropped.push_back(l.id);
                                          return true;
                                      }
                                      return false;
                                  }),
                   out.legs.end());
    if (trace)
        for (const auto& id : dropped)
            trace->push_back({ReductionStep::Kind::ForgetLeg, {id}});
    recompute_special_flags(out);
    renumber_legs(out);
    return out;
}

// Removes every removable string: a 0-infinity edge with an unstable
// otherwise-free level-0 end whose removal does not strand the infinity end.
// The infinity end keeps a phi-type leg in place of the edge. A string whose
// infinity end is itself unstable and 1-valent is left alone; such a
// standalone piece has positive-dimensional end moduli and is flagged by the
// certifier instead.
inline DecoratedGraph remove_strings(const DecoratedGraph& g,
                                     std::vector<ReductionStep>* trace = nullptr) {
    DecoratedGraph cur = g;
    for (;;) {
        const Edge* pick = nullptr;
        for (const auto& e : cur.edges) {
            if (!is_string_edge(cur, e)) continue;
            const Vertex* b = find_vertex(cur, e.endB);
            if (!b->stable && edge_valency(cur, e.endB) == 1) continue;
            pick = &e;
            break;
        }
        if (!pick) return cur;
        const Edge e = *pick;
        detail::erase_edge(cur, e.id);
        detail::erase_vertex(cur, e.endA);
        cur.legs.push_back({"s:" + e.id, e.endB, detail::next_position(cur),
                            Monodromy::OnePhi});
        recompute_special_flags(cur);
        renumber_legs(cur);
        if (trace) trace->push_back({ReductionStep::Kind::RemoveString, {e.id}});
    }
}

// Full reduction: decouple, trim, split off the level-1 islands, then
// alternate leg forgetting and string removal to a fixed point.
inline DecoratedGraph reduce_to_terminal(const DecoratedGraph& g,
                                         std::vector<ReductionStep>* trace = nullptr) {
    DecoratedGraph cur = decouple_all(g, trace);
    cur = trim(cur, trace);
    auto parts = split_components(cur);
    if (trace) trace->push_back({ReductionStep::Kind::SplitComponents, {}});
    cur = std::move(parts.gammaZeroInf);
    for (;;) {
        std::size_t before = cur.legs.size() + cur.edges.size();
        cur = forget_legs(cur, trace);
        cur = remove_strings(cur, trace);
        if (cur.legs.size() + cur.edges.size() == before) return cur;
    }
}

// Certifies that the graph's localization contribution vanishes by reducing
// it to a terminal graph of negative virtual dimension. Pure loops and
// regular graphs are passed through with their own verdicts.
inline Certificate certify_vanishing(const DecoratedGraph& g) {
    Certificate cert;
    auto rep = validate(g);
    if (!rep.empty()) {
        cert.verdict = Certificate::Verdict::Invalid;
        cert.reason = rep.front().message;
        return cert;
    }
    auto cls = classify(g);
    if (!cls.isFlat) throw ReduceError("flatten first");
    if (cls.isPureLoop) {
        cert.verdict = Certificate::Verdict::PureLoop;
        return cert;
    }
    if (cls.isRegular) {
        cert.verdict = Certificate::Verdict::RegularNotCovered;
        return cert;
    }

    DecoratedGraph term = reduce_to_terminal(g, &cert.trace);
    if (has_string(term)) {
        cert.verdict = Certificate::Verdict::Invalid;
        cert.reason = "standalone string component has no rigid end configuration";
        return cert;
    }
    try {
        cert.terminalVdims.push_back(vdim(term).total);
    } catch (const VdimError& e) {
        cert.verdict = Certificate::Verdict::Invalid;
        cert.reason = e.what();
        return cert;
    }
    cert.verdict = cert.terminalVdims.back() < 0 ? Certificate::Verdict::Vanishes
                                                 : Certificate::Verdict::Invalid;
    if (cert.verdict == Certificate::Verdict::Invalid)
        cert.reason = "terminal graph has non-negative virtual dimension";
    return cert;
}

// Same certification for an N-decorated graph: hours must cover every vertex
// and lie in [1, N]; the reduction itself is insensitive to them.
inline Certificate certify_vanishing_nmsp(const DecoratedGraph& g, int n) {
    if (n < 1) throw ReduceError("hour range must be at least 1");
    for (const auto& v : g.vertices) {
        if (!v.hour) throw ReduceError("missing hour decoration");
        if (*v.hour < 1 || *v.hour > n) throw ReduceError("hour out of range");
    }
    return certify_vanishing(g);
}

} // namespace msp
