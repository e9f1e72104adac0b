#ifndef TKCQ_DECOMPOSE_HPP
#define TKCQ_DECOMPOSE_HPP

#include <cstdint>
#include <optional>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tkcq/graph.hpp"
#include "tkcq/tel.hpp"

namespace tkcq {

// Per-vertex distinct-neighbor degrees plus pair multiplicities, with a
// lazy min-heap driving the peel. Degree counts neighbor vertices, not
// parallel edges; pair_count detects when an edge deletion actually
// lowers a degree.
class DegreeState {
public:
    DegreeState() = default;
    explicit DegreeState(const Tel& tel, const std::vector<VertexId>* tie_order = nullptr);

    std::uint32_t degree(VertexId v) const {
        return v < degree_.size() ? degree_[v] : 0;
    }
    std::uint32_t pair_multiplicity(VertexId u, VertexId v) const;

    // Decrements the pair multiplicity for a deleted edge and propagates
    // degree decreases when the pair dies.
    void on_edge_removed(VertexId u, VertexId v);

    // Pops the minimum-degree live vertex if its degree is below k,
    // skipping stale heap entries. Returns nullopt once every live
    // vertex has degree >= k.
    std::optional<VertexId> pop_min_below(std::uint32_t k);

    std::vector<std::pair<VertexId, VertexId>> pairs_below(std::uint32_t sigma) const;

    std::size_t live_vertex_count() const { return live_; }

private:
    static std::uint64_t pair_key(VertexId u, VertexId v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | v;
    }
    void push(VertexId v);

    std::unordered_map<std::uint64_t, std::uint32_t> pair_count_;
    std::vector<std::uint32_t> degree_;
    // Heap entries: (degree, tie key, vertex). Stale entries are filtered on pop.
    using Entry = std::tuple<std::uint32_t, std::uint32_t, VertexId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq_;
    std::vector<VertexId> tie_order_;  // optional permutation for tie shuffling in tests
    std::size_t live_ = 0;
};

// TCD operation: truncate the TEL to the target interval, then peel
// vertices with fewer than k distinct neighbors. With sigma > 1 every
// vertex pair whose parallel-edge count drops into (0, sigma) loses its
// remaining edges immediately. Mutates tel and state in place; returns
// the resulting TTI, or nullopt when nothing survives.
std::optional<TimeInterval> tcd(Tel& tel, DegreeState& state, std::uint32_t k,
                                TimeInterval target, std::uint32_t sigma = 1);

// Standard k-core over a simple graph given as distinct-neighbor sets.
// Kept independent of the TEL path; this is the oracle's peeler.
std::vector<VertexId> simple_core_decompose(
    const std::unordered_map<VertexId, std::unordered_set<VertexId>>& adjacency,
    std::uint32_t k);

}  // namespace tkcq

#endif  // TKCQ_DECOMPOSE_HPP
