#ifndef TKCQ_TEL_HPP
#define TKCQ_TEL_HPP

#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

#include "tkcq/graph.hpp"

namespace tkcq {

struct TLNode;

// An edge lives in exactly three intrusive lists: TL(t), SL(u), DL(v).
// Unlinking needs no traversal; the tl back-handle locates the owning
// time list without hashing.
struct EdgeNode {
    VertexId u = 0;
    VertexId v = 0;
    Timestamp t = 0;
    EdgeNode* tl_prev = nullptr;
    EdgeNode* tl_next = nullptr;
    EdgeNode* sl_prev = nullptr;
    EdgeNode* sl_next = nullptr;
    EdgeNode* dl_prev = nullptr;
    EdgeNode* dl_next = nullptr;
    TLNode* tl = nullptr;
};

// One node per distinct timestamp present in the structure.
struct TLNode {
    Timestamp t = 0;
    TLNode* prev = nullptr;
    TLNode* next = nullptr;
    EdgeNode* head = nullptr;
    EdgeNode* tail = nullptr;
    std::size_t size = 0;

    bool empty() const { return size == 0; }
};

// Temporal Edge List: a timeline of per-timestamp time lists plus
// per-vertex source/destination lists, all doubly linked so that edge
// deletion, timeline trimming and TTI lookup are constant time.
class Tel {
public:
    Tel() = default;
    explicit Tel(const TemporalGraph& graph);  // build
    Tel(const Tel& other);                     // clone: structurally independent deep copy
    Tel& operator=(const Tel& other);
    Tel(Tel&&) noexcept;
    Tel& operator=(Tel&&) noexcept;
    ~Tel();

    // Appends an edge; t below the current maximum timestamp is rejected
    // (the dynamic model is append-at-end only).
    void add_edge(VertexId u, VertexId v, Timestamp t);

    // Unlinks a live edge from its three lists. The time list is left in
    // place even if it becomes empty; the caller decides del_tl.
    void del_edge(EdgeNode* e);

    // Unlinks a time list node. Any edges still inside are considered
    // removed and are also unlinked from their SL/DL.
    void del_tl(TLNode* node);

    TLNode* timeline_head() const { return head_; }
    TLNode* timeline_tail() const { return tail_; }
    static TLNode* next_tl(TLNode* node) { return node ? node->next : nullptr; }
    static TLNode* prev_tl(TLNode* node) { return node ? node->prev : nullptr; }

    EdgeNode* sl_head(VertexId v) const;
    EdgeNode* dl_head(VertexId v) const;

    std::optional<TimeInterval> tti() const;

    std::size_t edge_count() const { return edge_count_; }
    bool empty() const { return edge_count_ == 0; }
    std::size_t vertex_count() const { return live_vertices_; }  // vertices with a live incident edge
    std::size_t timeline_length() const { return timeline_length_; }

    // Pointer-write counter backing the O(1)-per-manipulation contract tests.
    std::size_t link_updates() const { return link_updates_; }

    std::vector<TemporalEdge> collect_edges() const;  // in timeline order

private:
    struct VertexLists {
        EdgeNode* sl_head = nullptr;
        EdgeNode* sl_tail = nullptr;
        EdgeNode* dl_head = nullptr;
        EdgeNode* dl_tail = nullptr;
        std::size_t incident = 0;
    };

    void append(VertexId u, VertexId v, Timestamp t);
    void ensure_vertex(VertexId v);
    void unlink_from_sl_dl(EdgeNode* e);
    void copy_from(const Tel& other);
    void destroy();

    TLNode* head_ = nullptr;
    TLNode* tail_ = nullptr;
    std::vector<VertexLists> verts_;
    std::size_t edge_count_ = 0;
    std::size_t live_vertices_ = 0;
    std::size_t timeline_length_ = 0;
    std::size_t link_updates_ = 0;
};

}  // namespace tkcq

#endif  // TKCQ_TEL_HPP
