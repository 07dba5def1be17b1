#include "msp/enumerate.hpp"
#include "msp/flatten.hpp"
#include "msp/json_io.hpp"
#include "msp/lg.hpp"
#include "msp/reduce.hpp"
#include "msp/vdim.hpp"
#include "msp/weights.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

namespace {

int loadGraph(const std::string& path, msp::DecoratedGraph& out) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open file: " << path << "\n";
        return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    auto res = msp::graph_from_string(ss.str());
    if (!res.graph) {
        std::cerr << "parse error: " << res.error << "\n";
        return 2;
    }
    out = std::move(*res.graph);
    return 0;
}

msp::json violationsJson(const msp::ValidationReport& rep) {
    msp::json out;
    out["valid"] = rep.empty();
    out["violations"] = msp::json::array();
    for (const auto& v : rep)
        out["violations"].push_back({{"element", v.element}, {"message", v.message}});
    return out;
}

int requireValid(const msp::DecoratedGraph& g) {
    auto rep = msp::validate(g);
    if (rep.empty()) return 0;
    std::cerr << "invalid graph: " << rep.front().message << "\n";
    return 1;
}

msp::json certificateJson(const msp::Certificate& c) {
    msp::json out;
    out["verdict"] = msp::verdict_str(c.verdict);
    out["terminal_vdims"] = msp::json::array();
    for (const auto& r : c.terminalVdims) out["terminal_vdims"].push_back(msp::rat_str(r));
    out["trace"] = msp::json::array();
    for (const auto& s : c.trace) {
        msp::json js;
        js["kind"] = msp::step_kind_str(s.kind);
        js["elements"] = s.elements;
        out["trace"].push_back(js);
    }
    if (c.verdict == msp::Certificate::Verdict::Invalid) out["reason"] = c.reason;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decorated localization-graph calculus for MSP fields"};
    app.require_subcommand(1);

    std::string file;
    bool pretty = false;
    int nmsp = 0;

    auto* vcmd = app.add_subcommand("validate", "check a graph file, re-emit if valid");
    vcmd->add_option("file", file)->required();

    auto* fcmd = app.add_subcommand("flatten", "contract all balanced vertices");
    fcmd->add_option("file", file)->required();

    auto* wcmd = app.add_subcommand("weights", "tangent and bundle weights");
    wcmd->add_option("file", file)->required();

    auto* dcmd = app.add_subcommand("vdim", "virtual dimension breakdown");
    dcmd->add_option("file", file)->required();
    dcmd->add_flag("--pretty", pretty);

    auto* ccmd = app.add_subcommand("certify", "vanishing certificate");
    ccmd->add_option("file", file)->required();
    ccmd->add_option("--nmsp", nmsp, "validate hour decorations for this N");

    msp::EnumCaps caps{1, 2, 2, 2};
    bool doCertify = false;
    bool includeUnrealizable = false;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    auto* ecmd = app.add_subcommand("enumerate", "stream flat graphs within caps");
    ecmd->add_option("--max-genus", caps.maxGenus);
    ecmd->add_option("--max-edges", caps.maxEdges);
    ecmd->add_option("--max-legs", caps.maxLegs);
    ecmd->add_option("--max-deg", caps.maxDegree);
    ecmd->add_flag("--certify", doCertify, "append the verdict to each line");
    ecmd->add_flag("--include-unrealizable", includeUnrealizable);
    ecmd->add_option("--jobs", jobs, "worker threads for --certify");

    int lgG = 0, lgM = 0, lgD = 0;
    auto* lcmd = app.add_subcommand("lg-index", "potential-series index table");
    lcmd->add_option("--genus", lgG)->required();
    lcmd->add_option("--m-max", lgM)->required();
    lcmd->add_option("--d-max", lgD)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    msp::DecoratedGraph g;

    if (*vcmd) {
        if (int rc = loadGraph(file, g)) return rc;
        auto rep = msp::validate(g);
        if (!rep.empty()) {
            std::cout << violationsJson(rep).dump() << "\n";
            return 1;
        }
        std::cout << msp::graph_to_string(g);
        return 0;
    }

    if (*fcmd) {
        if (int rc = loadGraph(file, g)) return rc;
        if (int rc = requireValid(g)) return rc;
        std::cout << msp::graph_to_string(msp::flatten(g));
        return 0;
    }

    if (*wcmd) {
        if (int rc = loadGraph(file, g)) return rc;
        if (int rc = requireValid(g)) return rc;
        msp::json out;
        out["edges"] = msp::json::array();
        try {
            for (const auto& e : g.edges) {
                auto w = msp::edge_tangent_weights(e);
                out["edges"].push_back({{"id", e.id},
                                        {"atLow", msp::rat_str(w.atLow)},
                                        {"atInfOrHigh", msp::rat_str(w.atInfOrHigh)}});
            }
        } catch (const msp::WeightError& e) {
            std::cerr << "weight error: " << e.what() << "\n";
            return 1;
        }
        msp::json lv;
        for (auto [name, level] :
             {std::pair{"0", msp::Level::Zero}, {"1", msp::Level::One},
              {"inf", msp::Level::Infinity}}) {
            auto b = msp::vertex_bundle_weights(level);
            msp::json jb;
            if (b.wL1) jb["wL1"] = msp::rat_str(*b.wL1);
            jb["wL2"] = msp::rat_str(b.wL2);
            if (b.wN) jb["wN"] = msp::rat_str(*b.wN);
            jb["wL1PlusWN"] = msp::rat_str(b.l1PlusN);
            lv[name] = jb;
        }
        out["levels"] = lv;
        std::cout << out.dump() << "\n";
        return 0;
    }

    if (*dcmd) {
        if (int rc = loadGraph(file, g)) return rc;
        if (int rc = requireValid(g)) return rc;
        try {
            auto b = msp::vdim(g);
            if (pretty) {
                std::cout << b.dimD << " " << b.chiMuNu << " "
                          << msp::rat_str(b.chiFields) << " -> "
                          << msp::rat_str(b.total) << "\n";
            } else {
                msp::json out;
                out["dimD"] = b.dimD;
                out["chiMuNu"] = b.chiMuNu;
                out["chiFields"] = msp::rat_str(b.chiFields);
                out["total"] = msp::rat_str(b.total);
                std::cout << out.dump() << "\n";
            }
        } catch (const msp::VdimError& e) {
            std::cerr << "vdim error: " << e.what() << "\n";
            return 1;
        }
        return 0;
    }

    if (*ccmd) {
        if (int rc = loadGraph(file, g)) return rc;
        msp::Certificate cert;
        try {
            cert = nmsp > 0 ? msp::certify_vanishing_nmsp(g, nmsp)
                            : msp::certify_vanishing(g);
        } catch (const std::exception& e) {
            std::cerr << "certify error: " << e.what() << "\n";
            return 1;
        }
        std::cout << certificateJson(cert).dump() << "\n";
        return cert.verdict == msp::Certificate::Verdict::Invalid ? 1 : 0;
    }

    if (*ecmd) {
        msp::EnumOptions opt;
        opt.realizableOnly = !includeUnrealizable;
        auto gs = msp::enumerate_flat_graphs(caps, opt);
        if (!doCertify) {
            for (const auto& gr : gs) std::cout << msp::graph_to_json(gr).dump() << "\n";
            return 0;
        }
        std::vector<std::string> verdicts(gs.size());
        if (jobs < 1) jobs = 1;
        std::vector<std::thread> pool;
        std::size_t chunk = (gs.size() + jobs - 1) / std::max<std::size_t>(jobs, 1);
        for (int j = 0; j < jobs; ++j) {
            std::size_t lo = j * chunk, hi = std::min(gs.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i)
                    verdicts[i] = msp::verdict_str(msp::certify_vanishing(gs[i]).verdict);
            });
        }
        for (auto& t : pool) t.join();
        for (std::size_t i = 0; i < gs.size(); ++i)
            std::cout << msp::graph_to_json(gs[i]).dump() << "\t" << verdicts[i] << "\n";
        return 0;
    }

    if (*lcmd) {
        try {
            for (const auto& ix : msp::potential_index_set(lgG, lgM, lgD)) {
                msp::json out;
                out["m"] = ix.m;
                out["dPrime"] = ix.dPrime;
                std::cout << out.dump() << "\n";
            }
        } catch (const msp::LgError& e) {
            std::cerr << "lg error: " << e.what() << "\n";
            return 2;
        }
        return 0;
    }

    return 2;
}
