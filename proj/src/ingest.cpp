#include "tkcq/ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <string_view>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tkcq {

namespace {

bool parse_int(std::string_view tok, std::int64_t& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

}  // namespace

TemporalGraph parse_edge_list(std::istream& input, const ParseConfig& config,
                              ParseReport* report) {
    ParseReport local;
    ParseReport& rep = report ? *report : local;
    rep = ParseReport{};

    std::unordered_map<std::int64_t, VertexId> intern;
    std::vector<std::int64_t> external_ids;
    std::vector<TemporalEdge> edges;
    std::unordered_set<std::uint64_t> line_hashes;  // only for duplicate counting
    const std::size_t expected = config.column_order == ColumnOrder::src_dst_t ? 3 : 4;

    std::string line;
    while (std::getline(input, line)) {
        ++rep.lines;
        std::string_view sv(line);
        while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front())))
            sv.remove_prefix(1);
        if (sv.empty()) continue;
        if (config.comment_prefixes.find(sv.front()) != std::string::npos) continue;
        auto toks = split_ws(sv);
        std::int64_t su, sdt, st;
        bool ok = toks.size() == expected && parse_int(toks[0], su) && parse_int(toks[1], sdt) &&
                  parse_int(toks[expected - 1], st) && st >= 0;
        if (!ok) {
            ++rep.malformed_lines;
            continue;
        }
        if (su == sdt) {
            ++rep.self_loops_dropped;
            continue;
        }
        auto intern_id = [&](std::int64_t raw) {
            auto [it, fresh] = intern.try_emplace(raw, static_cast<VertexId>(external_ids.size()));
            if (fresh) external_ids.push_back(raw);
            return it->second;
        };
        VertexId u = intern_id(su), v = intern_id(sdt);
        std::uint64_t a = u < v ? u : v, b = u < v ? v : u;
        if (!line_hashes.insert((a << 42) ^ (b << 21) ^ static_cast<std::uint64_t>(st)).second)
            ++rep.duplicate_edges;  // retained: duplicates raise link strength
        edges.push_back({u, v, static_cast<Timestamp>(st)});
    }

    if (rep.malformed_lines > 0 && !config.lenient)
        throw ParseError("malformed lines: " + std::to_string(rep.malformed_lines));
    if (edges.empty()) throw ParseError("no edges parsed (empty input?)");

    std::stable_sort(edges.begin(), edges.end(),
                     [](const TemporalEdge& a, const TemporalEdge& b) { return a.t < b.t; });
    Timestamp t_min = edges.front().t;
    if (config.normalize) {
        for (auto& e : edges) e.t = e.t - t_min + 1;
    }
    TemporalGraph g = make_graph(std::move(edges), external_ids.size());
    g.external_ids = std::move(external_ids);
    return g;
}

TemporalGraph load_graph_file(const std::string& path, const ParseConfig& config,
                              ParseReport* report) {
    std::string content;
    if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
        gzFile f = gzopen(path.c_str(), "rb");
        if (!f) throw ParseError("cannot open " + path);
        char buf[1 << 16];
        int n;
        while ((n = gzread(f, buf, sizeof buf)) > 0) content.append(buf, n);
        bool bad = n < 0;
        gzclose(f);
        if (bad) throw ParseError("gzip read error on " + path);
    } else {
        std::ifstream ifs(path, std::ios::binary);
        if (!ifs) throw ParseError("cannot open " + path);
        std::ostringstream ss;
        ss << ifs.rdbuf();
        content = ss.str();
    }
    std::istringstream in(content);
    return parse_edge_list(in, config, report);
}

GraphStats graph_stats(const TemporalGraph& graph) {
    GraphStats s;
    s.vertex_count = graph.vertex_count;
    s.edge_count = graph.edges.size();
    s.distinct_timestamps = graph.timeline_domain.size();
    s.span_days = static_cast<double>(graph.raw_span_seconds) / 86400.0;
    return s;
}

void write_edge_list(std::ostream& out, const TemporalGraph& graph) {
    auto ext = [&](VertexId v) -> std::int64_t {
        return v < graph.external_ids.size() ? graph.external_ids[v] : v;
    };
    for (const auto& e : graph.edges) out << ext(e.u) << ' ' << ext(e.v) << ' ' << e.t << '\n';
}

}  // namespace tkcq
