#include "tkcq/decompose.hpp"

#include <algorithm>
#include <cassert>

namespace tkcq {

DegreeState::DegreeState(const Tel& tel, const std::vector<VertexId>* tie_order) {
    if (tie_order) tie_order_ = *tie_order;
    for (TLNode* n = tel.timeline_head(); n; n = n->next) {
        for (EdgeNode* e = n->head; e; e = e->tl_next) {
            auto [it, fresh] = pair_count_.try_emplace(pair_key(e->u, e->v), 0);
            ++it->second;
            if (fresh) {
                VertexId m = std::max(e->u, e->v);
                if (m >= degree_.size()) degree_.resize(m + 1, 0);
                if (degree_[e->u]++ == 0) ++live_;
                if (degree_[e->v]++ == 0) ++live_;
            }
        }
    }
    for (VertexId v = 0; v < degree_.size(); ++v)
        if (degree_[v] > 0) push(v);
}

std::uint32_t DegreeState::pair_multiplicity(VertexId u, VertexId v) const {
    auto it = pair_count_.find(pair_key(u, v));
    return it == pair_count_.end() ? 0 : it->second;
}

void DegreeState::push(VertexId v) {
    std::uint32_t tie = v < tie_order_.size() ? tie_order_[v] : v;
    pq_.emplace(degree_[v], tie, v);
}

void DegreeState::on_edge_removed(VertexId u, VertexId v) {
    auto it = pair_count_.find(pair_key(u, v));
    assert(it != pair_count_.end() && it->second > 0);
    if (--it->second == 0) {
        pair_count_.erase(it);
        for (VertexId w : {u, v}) {
            if (--degree_[w] == 0)
                --live_;
            else
                push(w);
        }
    }
}

std::optional<VertexId> DegreeState::pop_min_below(std::uint32_t k) {
    while (!pq_.empty()) {
        auto [deg, tie, v] = pq_.top();
        if (deg != degree_[v] || deg == 0) {  // stale
            pq_.pop();
            continue;
        }
        if (deg >= k) return std::nullopt;
        pq_.pop();
        return v;
    }
    return std::nullopt;
}

std::vector<std::pair<VertexId, VertexId>> DegreeState::pairs_below(std::uint32_t sigma) const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto& [key, count] : pair_count_)
        if (count < sigma)
            out.emplace_back(static_cast<VertexId>(key >> 32),
                             static_cast<VertexId>(key & 0xffffffffu));
    return out;
}

namespace {

// Deletes one edge and keeps state/TEL consistent, discarding the time
// list once its last edge is gone. With sigma > 1, a pair dropping into
// (0, sigma) loses its remaining edges right away.
void remove_edge(Tel& tel, DegreeState& state, EdgeNode* e, std::uint32_t sigma);

// Deletes every remaining parallel edge of {u,v}. The pair count goes
// straight to zero and no other pair is touched, so the removals here
// run without the sigma cascade (which would recurse onto this pair).
void delete_pair(Tel& tel, DegreeState& state, VertexId u, VertexId v) {
    std::vector<EdgeNode*> doomed;
    for (EdgeNode* e = tel.sl_head(u); e; e = e->sl_next)
        if (e->v == v) doomed.push_back(e);
    for (EdgeNode* e = tel.dl_head(u); e; e = e->dl_next)
        if (e->u == v) doomed.push_back(e);
    for (EdgeNode* e : doomed) remove_edge(tel, state, e, /*sigma=*/1);
}

void remove_edge(Tel& tel, DegreeState& state, EdgeNode* e, std::uint32_t sigma) {
    VertexId u = e->u, v = e->v;
    TLNode* tl = e->tl;
    state.on_edge_removed(u, v);
    tel.del_edge(e);
    if (tl->empty()) tel.del_tl(tl);
    if (sigma > 1) {
        std::uint32_t m = state.pair_multiplicity(u, v);
        if (m > 0 && m < sigma) delete_pair(tel, state, u, v);
    }
}

}  // namespace

std::optional<TimeInterval> tcd(Tel& tel, DegreeState& state, std::uint32_t k,
                                TimeInterval target, std::uint32_t sigma) {
    // Truncation: walk the timeline inward from both ends. The sigma
    // cascade is deferred to the sweep below so the walk never deletes
    // ahead of itself. Deleting the last edge of a time list discards
    // the list, so the node must not be touched afterwards.
    while (tel.timeline_head() && tel.timeline_head()->t < target.ts) {
        TLNode* n = tel.timeline_head();
        if (!n->head) {
            tel.del_tl(n);
            continue;
        }
        while (n->size > 1) remove_edge(tel, state, n->head, /*sigma=*/1);
        remove_edge(tel, state, n->head, /*sigma=*/1);
    }
    while (tel.timeline_tail() && tel.timeline_tail()->t > target.te) {
        TLNode* n = tel.timeline_tail();
        if (!n->head) {
            tel.del_tl(n);
            continue;
        }
        while (n->size > 1) remove_edge(tel, state, n->head, /*sigma=*/1);
        remove_edge(tel, state, n->head, /*sigma=*/1);
    }
    // Strength sweep before peeling: truncation can leave pairs below
    // sigma without any individual deletion noticing.
    if (sigma > 1) {
        for (auto [u, v] : state.pairs_below(sigma)) delete_pair(tel, state, u, v);
    }
    // Decomposition: peel vertices with fewer than k distinct neighbors.
    while (auto popped = state.pop_min_below(k)) {
        VertexId v = *popped;
        while (EdgeNode* e = tel.sl_head(v)) remove_edge(tel, state, e, sigma);
        while (EdgeNode* e = tel.dl_head(v)) remove_edge(tel, state, e, sigma);
    }
    return tel.tti();
}

std::vector<VertexId> simple_core_decompose(
    const std::unordered_map<VertexId, std::unordered_set<VertexId>>& adjacency,
    std::uint32_t k) {
    std::unordered_map<VertexId, std::uint32_t> deg;
    for (const auto& [v, nbrs] : adjacency) deg[v] = static_cast<std::uint32_t>(nbrs.size());
    std::vector<VertexId> stack;
    std::unordered_set<VertexId> dead;
    for (const auto& [v, d] : deg)
        if (d < k) stack.push_back(v);
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        if (!dead.insert(v).second) continue;
        for (VertexId w : adjacency.at(v)) {
            if (dead.count(w)) continue;
            if (deg[w]-- == k) stack.push_back(w);
        }
    }
    std::vector<VertexId> core;
    for (const auto& [v, nbrs] : adjacency)
        if (!dead.count(v)) core.push_back(v);
    std::sort(core.begin(), core.end());
    return core;
}

}  // namespace tkcq
