#include "tkcq/graph.hpp"

#include <algorithm>

namespace tkcq {

TemporalGraph make_graph(std::vector<TemporalEdge> edges, std::size_t vertex_count) {
    TemporalGraph g;
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [](const TemporalEdge& e) { return e.u == e.v; }),
                edges.end());
    std::stable_sort(edges.begin(), edges.end(),
                     [](const TemporalEdge& a, const TemporalEdge& b) { return a.t < b.t; });
    VertexId max_id = 0;
    for (const auto& e : edges) max_id = std::max({max_id, e.u, e.v});
    g.vertex_count = edges.empty() ? vertex_count
                                   : std::max<std::size_t>(vertex_count, max_id + 1);
    for (const auto& e : edges) {
        if (g.timeline_domain.empty() || g.timeline_domain.back() != e.t)
            g.timeline_domain.push_back(e.t);
    }
    if (!g.timeline_domain.empty())
        g.raw_span_seconds = g.timeline_domain.back() - g.timeline_domain.front();
    g.edges = std::move(edges);
    return g;
}

namespace {

// FNV-1a over the canonical triple stream.
std::uint64_t fnv1a(std::uint64_t h, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xffu;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

std::vector<TemporalEdge> canonical_edges(std::vector<TemporalEdge> edges) {
    for (auto& e : edges) {
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const TemporalEdge& a, const TemporalEdge& b) {
        if (a.t != b.t) return a.t < b.t;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    return edges;
}

std::uint64_t edge_fingerprint(const std::vector<TemporalEdge>& edges) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& e : canonical_edges(edges)) {
        h = fnv1a(h, e.u);
        h = fnv1a(h, e.v);
        h = fnv1a(h, static_cast<std::uint64_t>(e.t));
    }
    return h;
}

}  // namespace tkcq
