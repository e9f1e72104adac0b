// tkcq: temporal k-core query tool.
//
// Subcommands:
//   stats   print basic statistics of a temporal edge list
//   query   run a temporal k-core query (otcd | tcd | brute)
//   verify  run all three algorithms and compare results
//   bench   sweep k or span and emit one CSV row per point

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tkcq/engine.hpp"
#include "tkcq/ingest.hpp"

using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

struct CommonOpts {
    std::string file;
    bool raw_ts = false;  // skip timestamp normalization
    bool weighted = false;
    bool lenient = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("file", o.file, "temporal edge list (plain or .gz)")->required();
    cmd->add_flag("--raw-ts", o.raw_ts, "keep raw timestamps (no 1-based normalization)");
    cmd->add_flag("--weighted", o.weighted, "input has a weight column (u v w t); ignored");
    cmd->add_flag("--lenient", o.lenient, "tolerate malformed lines");
}

tkcq::ParseConfig parse_config(const CommonOpts& o) {
    tkcq::ParseConfig cfg;
    cfg.column_order = o.weighted ? tkcq::ColumnOrder::src_dst_w_t : tkcq::ColumnOrder::src_dst_t;
    cfg.normalize = !o.raw_ts;
    cfg.lenient = o.lenient;
    return cfg;
}

tkcq::TemporalGraph load_or_exit(const CommonOpts& o) {
    if (!std::filesystem::exists(o.file)) {
        std::cerr << "error: no such file: " << o.file << "\n";
        std::exit(kExitUsage);
    }
    try {
        return tkcq::load_graph_file(o.file, parse_config(o));
    } catch (const tkcq::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(kExitInput);
    }
}

json stats_json(const tkcq::QueryStats& s) {
    return json{{"cells_visited", s.cells_visited},
                {"tcd_ops", s.tcd_ops},
                {"nonempty_inductions", s.nonempty_inductions},
                {"duplicate_inductions", s.duplicate_inductions},
                {"empties", s.empties},
                {"total_cells", s.total_cells},
                {"pruned", json{{"PoR", json{{"triggers", s.por.triggers}, {"cells", s.por.cells}}},
                                {"PoU", json{{"triggers", s.pou.triggers}, {"cells", s.pou.cells}}},
                                {"PoL", json{{"triggers", s.pol.triggers}, {"cells", s.pol.cells}}},
                                {"total_percent", s.pruned_percent()}}},
                {"peak_tel_edges", s.peak_tel_edges},
                {"wall_time_ms", s.wall_time_ms}};
}

void print_results(const tkcq::ResultSet& rs, const std::string& format, bool components) {
    if (format == "tsv") {
        std::cout << "tti_ts\ttti_te\tvertex_count\tedge_count";
        if (components) std::cout << "\tcomponent_count";
        std::cout << "\n";
        for (const auto& [tti, core] : rs.cores) {
            std::cout << tti.ts << '\t' << tti.te << '\t' << core.vertex_count << '\t'
                      << core.edge_count;
            if (components) std::cout << '\t' << tkcq::connected_components(core).size();
            std::cout << "\n";
        }
        const auto& s = rs.stats;
        std::cout << "# stats\tcells_visited=" << s.cells_visited << "\ttcd_ops=" << s.tcd_ops
                  << "\tnonempty_inductions=" << s.nonempty_inductions
                  << "\tduplicate_inductions=" << s.duplicate_inductions
                  << "\tempties=" << s.empties << "\ttotal_cells=" << s.total_cells
                  << "\tpor_cells=" << s.por.cells << "\tpou_cells=" << s.pou.cells
                  << "\tpol_cells=" << s.pol.cells << "\tpruned_percent=" << s.pruned_percent()
                  << "\tpeak_tel_edges=" << s.peak_tel_edges << "\twall_time_ms=" << s.wall_time_ms
                  << "\n";
    } else {
        for (const auto& [tti, core] : rs.cores) {
            json row{{"tti_ts", tti.ts},
                     {"tti_te", tti.te},
                     {"vertex_count", core.vertex_count},
                     {"edge_count", core.edge_count}};
            if (components) row["component_count"] = tkcq::connected_components(core).size();
            std::cout << row.dump() << "\n";
        }
        std::cout << json{{"stats", stats_json(rs.stats)}}.dump() << "\n";
    }
}

tkcq::Algorithm algo_from(const std::string& name) {
    if (name == "otcd") return tkcq::Algorithm::otcd;
    if (name == "tcd") return tkcq::Algorithm::tcd;
    return tkcq::Algorithm::brute;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("TKC_THREADS")) {
        if (std::string(threads) != "1") {
            std::cerr << "error: TKC_THREADS must be 1 or unset\n";
            return kExitUsage;
        }
    }

    CLI::App app{"temporal k-core query engine"};
    app.require_subcommand(1);

    CommonOpts stats_opts;
    auto* cmd_stats = app.add_subcommand("stats", "print graph statistics");
    add_common(cmd_stats, stats_opts);

    CommonOpts query_opts;
    std::uint32_t k = 1, sigma = 1;
    std::int64_t ts = 0, te = 0;
    std::string algo = "otcd", format = "json";
    std::optional<std::int64_t> max_span;
    std::optional<std::size_t> top_shortest;
    bool materialize_flag = false;
    auto* cmd_query = app.add_subcommand("query", "run a temporal k-core query");
    add_common(cmd_query, query_opts);
    cmd_query->add_option("--k", k, "minimum distinct-neighbor degree")->required()
        ->check(CLI::PositiveNumber);
    cmd_query->add_option("--ts", ts, "range start")->required();
    cmd_query->add_option("--te", te, "range end")->required();
    cmd_query->add_option("--algo", algo, "otcd | tcd | brute")
        ->check(CLI::IsMember({"otcd", "tcd", "brute"}));
    cmd_query->add_option("--min-strength", sigma, "minimum parallel edges per linked pair")
        ->check(CLI::PositiveNumber);
    cmd_query->add_option("--max-span", max_span, "maximum TTI span (te - ts)");
    cmd_query->add_option("--top-shortest", top_shortest, "keep only the n shortest-span cores");
    cmd_query->add_flag("--materialize", materialize_flag, "materialize vertex/edge lists");
    cmd_query->add_option("--format", format, "json | tsv")->check(CLI::IsMember({"json", "tsv"}));

    CommonOpts verify_opts;
    std::uint32_t vk = 1, vsigma = 1;
    std::int64_t vts = 0, vte = 0;
    auto* cmd_verify = app.add_subcommand("verify", "cross-check otcd, tcd and brute force");
    add_common(cmd_verify, verify_opts);
    cmd_verify->add_option("--k", vk)->required()->check(CLI::PositiveNumber);
    cmd_verify->add_option("--ts", vts)->required();
    cmd_verify->add_option("--te", vte)->required();
    cmd_verify->add_option("--min-strength", vsigma)->check(CLI::PositiveNumber);

    CommonOpts bench_opts;
    std::uint32_t bk = 2;
    std::int64_t bts = 0, bte = 0;
    std::string k_range;
    std::vector<std::int64_t> span_steps;
    std::vector<std::string> algos{"otcd"};
    auto* cmd_bench = app.add_subcommand("bench", "parameter sweeps, CSV output");
    add_common(cmd_bench, bench_opts);
    cmd_bench->add_option("--k", bk, "fixed k (span sweep) or ignored (k sweep)");
    cmd_bench->add_option("--ts", bts)->required();
    cmd_bench->add_option("--te", bte, "range end (k sweep) or base end (span sweep)")->required();
    cmd_bench->add_option("--k-range", k_range, "a..b inclusive, e.g. 2..6");
    cmd_bench->add_option("--span-steps", span_steps, "list of spans added to ts");
    cmd_bench->add_option("--algo", algos, "algorithms to sweep")
        ->check(CLI::IsMember({"otcd", "tcd", "brute"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*cmd_stats) {
            auto g = load_or_exit(stats_opts);
            auto s = tkcq::graph_stats(g);
            std::cout << json{{"vertex_count", s.vertex_count},
                              {"edge_count", s.edge_count},
                              {"span_days", s.span_days},
                              {"distinct_timestamps", s.distinct_timestamps}}
                             .dump()
                      << "\n";
            return kExitOk;
        }

        if (*cmd_query) {
            auto g = load_or_exit(query_opts);
            tkcq::QuerySpec spec;
            spec.k = k;
            spec.range = {ts, te};
            spec.sigma = sigma;
            spec.max_span = max_span;
            spec.top_n_shortest = top_shortest;
            spec.algorithm = algo_from(algo);
            spec.materialize = materialize_flag;
            if (ts > te) {
                std::cerr << "error: --ts exceeds --te\n";
                return kExitUsage;
            }
            auto rs = tkcq::run_query(g, spec);
            print_results(rs, format, materialize_flag);
            return kExitOk;
        }

        if (*cmd_verify) {
            auto g = load_or_exit(verify_opts);
            tkcq::QuerySpec spec;
            spec.k = vk;
            spec.range = {vts, vte};
            spec.sigma = vsigma;
            spec.materialize = true;
            auto fingerprint_set = [&](tkcq::Algorithm a) {
                spec.algorithm = a;
                auto rs = tkcq::run_query(g, spec);
                std::map<tkcq::TimeInterval, std::uint64_t> out;
                for (const auto& [tti, core] : rs.cores)
                    out[tti] = tkcq::edge_fingerprint(*core.edges);
                return out;
            };
            auto o = fingerprint_set(tkcq::Algorithm::otcd);
            auto t = fingerprint_set(tkcq::Algorithm::tcd);
            auto b = fingerprint_set(tkcq::Algorithm::brute);
            if (o == t && t == b) {
                std::cout << "MATCH " << o.size() << " cores\n";
                return kExitOk;
            }
            std::cout << "MISMATCH otcd=" << o.size() << " tcd=" << t.size()
                      << " brute=" << b.size() << "\n";
            for (const auto& [tti, fp] : b)
                if (!o.count(tti) || o.at(tti) != fp)
                    std::cout << "  brute-only or differing: [" << tti.ts << "," << tti.te << "]\n";
            for (const auto& [tti, fp] : o)
                if (!b.count(tti)) std::cout << "  otcd-only: [" << tti.ts << "," << tti.te << "]\n";
            return kExitMismatch;
        }

        if (*cmd_bench) {
            auto g = load_or_exit(bench_opts);
            std::cout << "algo,k,ts,te,wall_time_ms,core_count,component_count,pruned_percent\n";
            auto run_point = [&](const std::string& a, std::uint32_t kk, std::int64_t pts,
                                 std::int64_t pte) {
                tkcq::QuerySpec spec;
                spec.k = kk;
                spec.range = {pts, pte};
                spec.algorithm = algo_from(a);
                spec.materialize = true;
                auto rs = tkcq::run_query(g, spec);
                std::size_t comps = 0;
                for (const auto& [tti, core] : rs.cores)
                    comps += tkcq::connected_components(core).size();
                std::cout << a << ',' << kk << ',' << pts << ',' << pte << ','
                          << rs.stats.wall_time_ms << ',' << rs.cores.size() << ',' << comps << ','
                          << rs.stats.pruned_percent() << "\n";
            };
            if (!k_range.empty()) {
                auto dots = k_range.find("..");
                if (dots == std::string::npos) {
                    std::cerr << "error: --k-range expects a..b\n";
                    return kExitUsage;
                }
                int a = std::stoi(k_range.substr(0, dots));
                int b = std::stoi(k_range.substr(dots + 2));
                for (const auto& alg : algos)
                    for (int kk = a; kk <= b; ++kk) run_point(alg, kk, bts, bte);
            } else if (!span_steps.empty()) {
                for (const auto& alg : algos)
                    for (auto span : span_steps) run_point(alg, bk, bts, bts + span);
            } else {
                for (const auto& alg : algos) run_point(alg, bk, bts, bte);
            }
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
