#pragma once

#include "msp/graph.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace msp {

using json = nlohmann::ordered_json;

inline std::string level_str(Level l) {
    switch (l) {
    case Level::Zero: return "0";
    case Level::One: return "1";
    default: return "inf";
    }
}

inline std::optional<Level> parse_level(const std::string& s) {
    if (s == "0") return Level::Zero;
    if (s == "1") return Level::One;
    if (s == "inf") return Level::Infinity;
    return std::nullopt;
}

inline std::string monodromy_str(Monodromy m) {
    switch (m) {
    case Monodromy::OnePhi: return "1phi";
    case Monodromy::OneRho: return "1rho";
    case Monodromy::M1: return "m1";
    case Monodromy::M2: return "m2";
    default: return "broad";
    }
}

inline std::optional<Monodromy> parse_monodromy(const std::string& s) {
    if (s == "1phi") return Monodromy::OnePhi;
    if (s == "1rho") return Monodromy::OneRho;
    if (s == "m1") return Monodromy::M1;
    if (s == "m2") return Monodromy::M2;
    if (s == "broad") return Monodromy::Broad;
    return std::nullopt;
}

inline std::string edge_class_str(EdgeClass c) {
    switch (c) {
    case EdgeClass::E01: return "01";
    case EdgeClass::E1Inf: return "1inf";
    default: return "0inf";
    }
}

inline std::optional<EdgeClass> parse_edge_class(const std::string& s) {
    if (s == "01") return EdgeClass::E01;
    if (s == "1inf") return EdgeClass::E1Inf;
    if (s == "0inf") return EdgeClass::E0Inf;
    return std::nullopt;
}

inline json graph_to_json(const DecoratedGraph& g) {
    json doc;
    doc["vertices"] = json::array();
    for (const auto& v : g.vertices) {
        json jv;
        jv["id"] = v.id;
        jv["level"] = level_str(v.level);
        jv["genus"] = v.genus;
        jv["deg0"] = rat_str(v.deg0);
        jv["degInf"] = rat_str(v.degInf);
        jv["stable"] = v.stable;
        if (v.hour) jv["hour"] = *v.hour;
        doc["vertices"].push_back(jv);
    }
    doc["edges"] = json::array();
    for (const auto& e : g.edges) {
        json je;
        je["id"] = e.id;
        je["endA"] = e.endA;
        je["endB"] = e.endB;
        je["class"] = edge_class_str(e.cls);
        je["deg0"] = rat_str(e.deg0);
        je["degInf"] = rat_str(e.degInf);
        je["orbifoldAtInf"] = e.orbifoldAtInf;
        je["specialAtInf"] = e.specialAtInf;
        doc["edges"].push_back(je);
    }
    doc["legs"] = json::array();
    for (const auto& l : g.legs) {
        json jl;
        jl["id"] = l.id;
        jl["vertex"] = l.vertex;
        jl["position"] = l.position;
        jl["monodromy"] = monodromy_str(l.monodromy);
        doc["legs"].push_back(jl);
    }
    if (g.degL2 != 0) doc["degL2"] = rat_str(g.degL2);
    return doc;
}

inline std::string graph_to_string(const DecoratedGraph& g) {
    return graph_to_json(g).dump(2) + "\n";
}

struct ParseResult {
    std::optional<DecoratedGraph> graph;
    std::string error; // names the offending field when parsing fails
};

namespace detail {

inline bool check_keys(const json& obj, std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional, std::string& err) {
    if (!obj.is_object()) {
        err = "expected a JSON object";
        return false;
    }
    for (const char* k : required) {
        if (!obj.contains(k)) {
            err = std::string("missing field \"") + k + "\"";
            return false;
        }
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : required)
            if (it.key() == k) known = true;
        for (const char* k : optional)
            if (it.key() == k) known = true;
        if (!known) {
            err = "unknown field \"" + it.key() + "\"";
            return false;
        }
    }
    return true;
}

inline bool get_rat(const json& obj, const char* key, Rat& out, std::string& err) {
    if (!obj[key].is_string()) {
        err = std::string("field \"") + key + "\" must be a rational string";
        return false;
    }
    auto r = parse_rat(obj[key].get<std::string>());
    if (!r) {
        err = std::string("field \"") + key + "\" is not a valid rational";
        return false;
    }
    out = *r;
    return true;
}

} // namespace detail

inline ParseResult graph_from_json(const json& doc) {
    ParseResult res;
    std::string err;
    if (!doc.is_object()) return {{}, "document must be a JSON object"};
    if (!detail::check_keys(doc, {"vertices", "edges", "legs"}, {"degL2"}, err))
        return {{}, err};
    if (!doc["vertices"].is_array() || !doc["edges"].is_array() || !doc["legs"].is_array())
        return {{}, "\"vertices\", \"edges\" and \"legs\" must be arrays"};
    DecoratedGraph g;
    if (doc.contains("degL2")) {
        if (!detail::get_rat(doc, "degL2", g.degL2, err)) return {{}, err};
    }
    for (const auto& jv : doc["vertices"]) {
        if (!detail::check_keys(jv, {"id", "level", "genus", "deg0", "degInf", "stable"},
                                {"hour"}, err))
            return {{}, err};
        Vertex v;
        if (!jv["id"].is_string()) return {{}, "vertex field \"id\" must be a string"};
        v.id = jv["id"].get<std::string>();
        auto lv = jv["level"].is_string() ? parse_level(jv["level"].get<std::string>())
                                          : std::nullopt;
        if (!lv) return {{}, "vertex field \"level\" must be \"0\", \"1\" or \"inf\""};
        v.level = *lv;
        if (!jv["genus"].is_number_integer())
            return {{}, "vertex field \"genus\" must be an integer"};
        v.genus = jv["genus"].get<int>();
        if (!detail::get_rat(jv, "deg0", v.deg0, err)) return {{}, err};
        if (!detail::get_rat(jv, "degInf", v.degInf, err)) return {{}, err};
        if (!jv["stable"].is_boolean())
            return {{}, "vertex field \"stable\" must be a boolean"};
        v.stable = jv["stable"].get<bool>();
        if (jv.contains("hour")) {
            if (!jv["hour"].is_number_integer())
                return {{}, "vertex field \"hour\" must be an integer"};
            v.hour = jv["hour"].get<int>();
        }
        g.vertices.push_back(v);
    }
    for (const auto& je : doc["edges"]) {
        if (!detail::check_keys(je,
                                {"id", "endA", "endB", "class", "deg0", "degInf",
                                 "orbifoldAtInf", "specialAtInf"},
                                {}, err))
            return {{}, err};
        Edge e;
        if (!je["id"].is_string()) return {{}, "edge field \"id\" must be a string"};
        e.id = je["id"].get<std::string>();
        if (!je["endA"].is_string() || !je["endB"].is_string())
            return {{}, "edge endpoints must be strings"};
        e.endA = je["endA"].get<std::string>();
        e.endB = je["endB"].get<std::string>();
        auto cls = je["class"].is_string()
                       ? parse_edge_class(je["class"].get<std::string>())
                       : std::nullopt;
        if (!cls) return {{}, "edge field \"class\" must be \"01\", \"1inf\" or \"0inf\""};
        e.cls = *cls;
        if (!detail::get_rat(je, "deg0", e.deg0, err)) return {{}, err};
        if (!detail::get_rat(je, "degInf", e.degInf, err)) return {{}, err};
        if (!je["orbifoldAtInf"].is_boolean() || !je["specialAtInf"].is_boolean())
            return {{}, "edge infinity-end flags must be booleans"};
        e.orbifoldAtInf = je["orbifoldAtInf"].get<bool>();
        e.specialAtInf = je["specialAtInf"].get<bool>();
        g.edges.push_back(e);
    }
    for (const auto& jl : doc["legs"]) {
        if (!detail::check_keys(jl, {"id", "vertex", "position", "monodromy"}, {}, err))
            return {{}, err};
        Leg l;
        if (!jl["id"].is_string()) return {{}, "leg field \"id\" must be a string"};
        l.id = jl["id"].get<std::string>();
        if (!jl["vertex"].is_string()) return {{}, "leg field \"vertex\" must be a string"};
        l.vertex = jl["vertex"].get<std::string>();
        if (!jl["position"].is_number_integer())
            return {{}, "leg field \"position\" must be an integer"};
        l.position = jl["position"].get<int>();
        auto m = jl["monodromy"].is_string()
                     ? parse_monodromy(jl["monodromy"].get<std::string>())
                     : std::nullopt;
        if (!m) return {{}, "leg field \"monodromy\" must be \"1phi\", \"1rho\", \"m1\", \"m2\" or \"broad\""};
        l.monodromy = *m;
        g.legs.push_back(l);
    }
    res.graph = std::move(g);
    return res;
}

inline ParseResult graph_from_string(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) return {{}, "malformed JSON"};
    return graph_from_json(doc);
}

} // namespace msp
