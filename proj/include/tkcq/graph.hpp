#ifndef TKCQ_GRAPH_HPP
#define TKCQ_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace tkcq {

using VertexId = std::uint32_t;
using Timestamp = std::int64_t;

// Inclusive time interval [ts, te].
struct TimeInterval {
    Timestamp ts = 0;
    Timestamp te = 0;

    bool operator==(const TimeInterval& o) const { return ts == o.ts && te == o.te; }
    bool operator!=(const TimeInterval& o) const { return !(*this == o); }
    bool operator<(const TimeInterval& o) const {
        return ts != o.ts ? ts < o.ts : te < o.te;
    }
    Timestamp span() const { return te - ts; }
};

inline bool interval_contains(const TimeInterval& outer, const TimeInterval& inner) {
    return outer.ts <= inner.ts && inner.te <= outer.te;
}

struct TemporalEdge {
    VertexId u = 0;  // storage orientation only; all semantics are undirected
    VertexId v = 0;
    Timestamp t = 0;

    bool operator==(const TemporalEdge& o) const { return u == o.u && v == o.v && t == o.t; }
};

// Immutable multiset of timestamped undirected edges with dense vertex ids.
struct TemporalGraph {
    std::size_t vertex_count = 0;
    std::vector<TemporalEdge> edges;           // sorted by t (stable)
    std::vector<Timestamp> timeline_domain;    // sorted distinct timestamps
    std::vector<std::int64_t> external_ids;    // reverse interning table (empty for synthetic graphs)
    std::int64_t raw_span_seconds = 0;         // span before normalization

    bool empty() const { return edges.empty(); }
    Timestamp t_min() const { return timeline_domain.front(); }
    Timestamp t_max() const { return timeline_domain.back(); }
};

// Builds a graph from an edge list, dropping self-loops and deriving the
// timeline domain. Vertex count is max id + 1 unless given explicitly.
TemporalGraph make_graph(std::vector<TemporalEdge> edges, std::size_t vertex_count = 0);

struct CoreSummary {
    TimeInterval tti;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    // Present only when materialization was requested.
    std::optional<std::vector<VertexId>> vertices;
    std::optional<std::vector<TemporalEdge>> edges;
};

// Order-independent digest of an edge multiset; u/v orientation is ignored.
// Equal multisets of unordered timestamped edges hash equal.
std::uint64_t edge_fingerprint(const std::vector<TemporalEdge>& edges);

// Canonical form backing the fingerprint: (min,max,t) triples, sorted.
std::vector<TemporalEdge> canonical_edges(std::vector<TemporalEdge> edges);

}  // namespace tkcq

#endif  // TKCQ_GRAPH_HPP
