// Acceptance harness: one pass/fail line per criterion, nonzero exit on
// any failure. Criteria 4-7 need the public CollegeMsg and
// email-Eu-core-temporal snapshots; place them under data/ (plain or .gz)
// to enable those checks, otherwise they are reported as SKIP.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#define DOCTEST_CONFIG_DISABLE
#include <doctest.h>
#undef REQUIRE
#define REQUIRE(x)                                      \
    do {                                                \
        if (!(x)) throw std::runtime_error("check failed: " #x); \
    } while (0)

#include "test_util.hpp"
#include "tkcq/engine.hpp"
#include "tkcq/ingest.hpp"

using namespace tkcq;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " - " << what << "\n";
    if (!ok) ++failures;
}

void report_skip(int id, const std::string& what) {
    std::cout << "criterion " << id << ": SKIP - " << what << "\n";
}

QuerySpec make_spec(std::uint32_t k, TimeInterval range, Algorithm a, std::uint32_t sigma = 1) {
    QuerySpec s;
    s.k = k;
    s.range = range;
    s.algorithm = a;
    s.sigma = sigma;
    s.materialize = true;
    return s;
}

std::map<TimeInterval, std::uint64_t> fingerprints(const ResultSet& rs) {
    std::map<TimeInterval, std::uint64_t> out;
    for (const auto& [tti, core] : rs.cores) {
        REQUIRE(core.edges.has_value());
        out[tti] = edge_fingerprint(*core.edges);
    }
    return out;
}

std::optional<std::string> find_dataset(const std::string& stem) {
    for (const char* dir : {"data/", "../data/", "../../data/"}) {
        for (const char* ext : {".txt", ".txt.gz", "", ".gz"}) {
            std::string p = dir + stem + ext;
            if (std::filesystem::exists(p)) return p;
        }
    }
    return std::nullopt;
}

struct CorpusRun {
    TemporalGraph graph;
    std::uint32_t k, sigma;
    ResultSet otcd;
};

}  // namespace

int main() {
    std::mt19937 rng(20240901);
    const TimeInterval range{1, 20};

    // ---- criteria 1 + 2 + 8: shared 200-graph corpus ----------------------
    std::vector<CorpusRun> corpus;
    bool c1 = true, c8 = true;
    std::size_t runs = 0, runs_with_dups = 0, total_dups = 0, total_inductions = 0;
    bool counting_consistent = true;
    auto t0 = Clock::now();
    try {
        for (int g_idx = 0; g_idx < 200; ++g_idx) {
            auto g = test::random_graph(rng, 30, 300, 20);
            for (std::uint32_t k = 1; k <= 5; ++k) {
                for (std::uint32_t sigma : {1u, 2u}) {
                    auto o = run_query(g, make_spec(k, range, Algorithm::otcd, sigma));
                    auto t = run_query(g, make_spec(k, range, Algorithm::tcd, sigma));
                    auto b = run_query(g, make_spec(k, range, Algorithm::brute, sigma));
                    auto fo = fingerprints(o);
                    if (fo != fingerprints(t) || fo != fingerprints(b)) c1 = false;
                    ++runs;
                    total_inductions += o.stats.nonempty_inductions;
                    total_dups += o.stats.duplicate_inductions;
                    if (o.stats.duplicate_inductions > 0) ++runs_with_dups;
                    if (o.stats.nonempty_inductions !=
                        o.cores.size() + o.stats.duplicate_inductions)
                        counting_consistent = false;
                    if (k == 2 && sigma == 1) corpus.push_back({g, k, sigma, std::move(o)});
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "corpus run aborted: " << e.what() << "\n";
        c1 = counting_consistent = false;
    }
    double corpus_s = std::chrono::duration<double>(Clock::now() - t0).count();
    report(1, c1 && corpus_s < 120.0,
           "otcd = tcd = brute on 200 random graphs, k 1..5, sigma 1..2 (" +
               std::to_string(corpus_s).substr(0, 5) + " s)");
    // The exactly-once claim does not hold universally: a row-head core
    // whose TTI falls back into an already-pruned stretch duplicates a
    // collected core, and no TTI-based rule can predict that without
    // performing the decomposition (counterexample pinned in
    // test_engine.cpp; analysis in README). The duplicates are detected
    // and deduplicated, so results are unaffected; the criterion is
    // reported against the measured count.
    bool c2 = counting_consistent && total_dups == 0;
    report(2, c2,
           "nonempty inductions == distinct cores; measured " + std::to_string(total_dups) +
               " duplicate inductions of " + std::to_string(total_inductions) + " across " +
               std::to_string(runs_with_dups) + "/" + std::to_string(runs) +
               " runs (known counterexample to the published claim; results unaffected)");

    // ---- criterion 3: TTI theorems ----------------------------------------
    bool c3 = true;
    try {
        for (const auto& run : corpus) {
            for (const auto& [tti, core] : run.otcd.cores) {
                // (a) TTI equals min/max timestamps of the core's edges
                REQUIRE(core.edges && !core.edges->empty());
                Timestamp lo = core.edges->front().t, hi = lo;
                for (const auto& e : *core.edges) {
                    lo = std::min(lo, e.t);
                    hi = std::max(hi, e.t);
                }
                if (TimeInterval{lo, hi} != tti) c3 = false;
                // (b) re-running tcd with target = TTI is a no-op
                Tel tel(make_graph(*core.edges));
                DegreeState st(tel);
                auto tti2 = tcd(tel, st, run.k, tti, run.sigma);
                if (tti2 != std::optional<TimeInterval>(tti) ||
                    edge_fingerprint(tel.collect_edges()) != edge_fingerprint(*core.edges))
                    c3 = false;
            }
        }
        // (c) nested cells evaluated by brute force give nested TTIs
        std::mt19937 rng3(7);
        for (int round = 0; round < 30; ++round) {
            auto g = test::random_graph(rng3, 15, 120, 10);
            for (Timestamp a = 1; a <= 10 && c3; ++a)
                for (Timestamp b = a; b <= 10; ++b) {
                    auto outer = test::brute_cell(g, 2, {a, b});
                    if (!outer) continue;
                    for (Timestamp c = a; c <= b; ++c)
                        for (Timestamp d = c; d <= b; ++d) {
                            auto inner = test::brute_cell(g, 2, {c, d});
                            if (inner && !interval_contains(outer->tti, inner->tti)) c3 = false;
                        }
                }
        }
    } catch (const std::exception& e) {
        std::cerr << "criterion 3 aborted: " << e.what() << "\n";
        c3 = false;
    }
    report(3, c3, "TTI = min/max timestamps; tcd at TTI is a no-op; nested cells nest TTIs");

    // ---- criteria 4-7: dataset reproductions ------------------------------
    auto college = find_dataset("CollegeMsg");
    auto email = find_dataset("email-Eu-core-temporal");
    struct DatasetQuery {
        Timestamp ts, te;
        std::uint32_t k;
        std::size_t expect;
    };
    const std::vector<DatasetQuery> college_queries{{554400, 565200, 2, 61},
                                                    {558000, 568800, 2, 21},
                                                    {561600, 572400, 2, 27},
                                                    {565200, 576000, 2, 26},
                                                    {568800, 579600, 2, 10}};
    const std::vector<DatasetQuery> email_queries{{36000, 46800, 3, 2},
                                                  {39600, 50400, 3, 3},
                                                  {284400, 295200, 3, 7},
                                                  {288000, 298800, 3, 25},
                                                  {291600, 302400, 3, 16}};
    if (!college || !email) {
        const std::string note = "datasets not present under data/ (CollegeMsg, email-Eu-core-temporal)";
        report_skip(4, note);
        report_skip(5, note);
        report_skip(6, note);
        report_skip(7, note);
    } else {
        try {
            ParseConfig raw_cfg;
            raw_cfg.normalize = false;
            auto run_set = [&](const std::string& path, const std::vector<DatasetQuery>& queries,
                               std::vector<ResultSet>& out_otcd, std::vector<ResultSet>& out_tcd,
                               std::vector<std::size_t>& expects) {
                auto g = load_graph_file(path, raw_cfg);
                Timestamp t_min = g.timeline_domain.front();
                for (const auto& q : queries) {
                    TimeInterval r{t_min + q.ts, t_min + q.te};
                    out_otcd.push_back(run_query(g, make_spec(q.k, r, Algorithm::otcd)));
                    out_tcd.push_back(run_query(g, make_spec(q.k, r, Algorithm::tcd)));
                    expects.push_back(q.expect);
                }
            };
            std::vector<ResultSet> o_runs, t_runs;
            std::vector<std::size_t> expects;
            run_set(*college, college_queries, o_runs, t_runs, expects);
            run_set(*email, email_queries, o_runs, t_runs, expects);

            bool c4 = true;
            std::string counts;
            for (std::size_t i = 0; i < o_runs.size(); ++i) {
                counts += (i ? "/" : "") + std::to_string(o_runs[i].cores.size());
                if (o_runs[i].cores.size() != expects[i]) c4 = false;
                if (o_runs[i].stats.wall_time_ms > 5000.0) c4 = false;
                if (fingerprints(o_runs[i]) != fingerprints(t_runs[i])) c4 = false;
            }
            report(4, c4, "published query counts reproduced (got " + counts + "), otcd <= 5 s each");

            const auto& q1 = o_runs[0].stats;
            bool c5 = q1.pruned_percent() >= 90.0 && q1.pou.cells > q1.por.cells;
            report(5, c5, "query 1 pruning: " + std::to_string(q1.pruned_percent()).substr(0, 5) +
                              "% cells pruned, PoU > PoR");

            bool c6 = true;
            for (std::size_t i = 0; i < o_runs.size(); ++i)
                if (o_runs[i].stats.wall_time_ms * 10.0 > t_runs[i].stats.wall_time_ms) c6 = false;
            report(6, c6, "otcd at least 10x faster than tcd on every reproduced query");

            auto g = load_graph_file(*college, raw_cfg);
            Timestamp t_min = g.timeline_domain.front();
            TimeInterval r{t_min + college_queries[0].ts, t_min + college_queries[0].te};
            bool c7 = true;
            std::size_t prev_count = SIZE_MAX;
            double prev_ms = 1e18;
            for (std::uint32_t k = 2; k <= 6; ++k) {
                auto rs = run_query(g, make_spec(k, r, Algorithm::otcd));
                if (rs.cores.size() > prev_count) c7 = false;
                if (rs.stats.wall_time_ms > prev_ms * 1.25) c7 = false;  // small timing jitter allowed
                prev_count = rs.cores.size();
                prev_ms = std::max(rs.stats.wall_time_ms, 0.5);
            }
            report(7, c7, "core count and otcd runtime non-increasing for k = 2..6");
        } catch (const std::exception& e) {
            std::cerr << "dataset criteria aborted: " << e.what() << "\n";
            report(4, false, "dataset run failed");
            report(5, false, "dataset run failed");
            report(6, false, "dataset run failed");
            report(7, false, "dataset run failed");
        }
    }

    // ---- criterion 8: dynamic equivalence ---------------------------------
    try {
        for (const auto& run : corpus) {
            const auto& g = run.graph;
            std::size_t cut = g.edges.size() * 4 / 5;
            std::vector<TemporalEdge> prefix(g.edges.begin(), g.edges.begin() + cut);
            auto pg = make_graph(std::move(prefix), g.vertex_count);
            Tel dynamic(pg);
            for (std::size_t i = cut; i < g.edges.size(); ++i)
                dynamic.add_edge(g.edges[i].u, g.edges[i].v, g.edges[i].t);
            auto rebuilt = make_graph(dynamic.collect_edges(), g.vertex_count);
            auto rs = run_query(rebuilt, make_spec(run.k, range, Algorithm::otcd, run.sigma));
            if (fingerprints(rs) != fingerprints(run.otcd)) c8 = false;
        }
    } catch (const std::exception& e) {
        std::cerr << "criterion 8 aborted: " << e.what() << "\n";
        c8 = false;
    }
    report(8, c8, "80% build + add_edge stream answers queries identically to a full build");

    // ---- criterion 9: sigma and max_span extensions -----------------------
    bool c9 = true;
    try {
        std::mt19937 rng9(99);
        for (int round = 0; round < 40; ++round) {
            auto g = test::random_graph(rng9, 20, 250, 15);
            auto rs = run_query(g, make_spec(2, {1, 15}, Algorithm::otcd, 2));
            for (const auto& [tti, core] : rs.cores) {
                std::map<std::pair<VertexId, VertexId>, std::uint32_t> mult;
                for (const auto& e : *core.edges) ++mult[std::minmax(e.u, e.v)];
                for (const auto& [pair, count] : mult)
                    if (count < 2) c9 = false;
            }
            if (fingerprints(rs) !=
                fingerprints(run_query(g, make_spec(2, {1, 15}, Algorithm::brute, 2))))
                c9 = false;

            auto spec = make_spec(2, {1, 15}, Algorithm::otcd);
            spec.max_span = 4;
            auto capped = run_query(g, spec);
            auto uncapped = run_query(g, make_spec(2, {1, 15}, Algorithm::otcd));
            std::size_t short_ones = 0;
            for (const auto& [tti, core] : uncapped.cores)
                if (tti.te - tti.ts <= 4) ++short_ones;
            if (capped.cores.size() != short_ones) c9 = false;
            for (const auto& [tti, core] : capped.cores)
                if (tti.te - tti.ts > 4) c9 = false;
        }
    } catch (const std::exception& e) {
        std::cerr << "criterion 9 aborted: " << e.what() << "\n";
        c9 = false;
    }
    report(9, c9, "sigma=2 pair strength holds and matches brute force; max_span filter is exact");

    if (failures) {
        std::cout << failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all evaluated criteria passed\n";
    return 0;
}
