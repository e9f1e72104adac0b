#include "tkcq/tel.hpp"

#include <stdexcept>
#include <utility>

namespace tkcq {

Tel::Tel(const TemporalGraph& graph) {
    verts_.resize(graph.vertex_count);
    for (const auto& e : graph.edges) append(e.u, e.v, e.t);
}

Tel::Tel(const Tel& other) { copy_from(other); }

Tel& Tel::operator=(const Tel& other) {
    if (this != &other) {
        destroy();
        copy_from(other);
    }
    return *this;
}

Tel::Tel(Tel&& other) noexcept
    : head_(other.head_),
      tail_(other.tail_),
      verts_(std::move(other.verts_)),
      edge_count_(other.edge_count_),
      live_vertices_(other.live_vertices_),
      timeline_length_(other.timeline_length_),
      link_updates_(other.link_updates_) {
    other.head_ = other.tail_ = nullptr;
    other.edge_count_ = other.live_vertices_ = other.timeline_length_ = 0;
}

Tel& Tel::operator=(Tel&& other) noexcept {
    if (this != &other) {
        destroy();
        head_ = other.head_;
        tail_ = other.tail_;
        verts_ = std::move(other.verts_);
        edge_count_ = other.edge_count_;
        live_vertices_ = other.live_vertices_;
        timeline_length_ = other.timeline_length_;
        link_updates_ = other.link_updates_;
        other.head_ = other.tail_ = nullptr;
        other.edge_count_ = other.live_vertices_ = other.timeline_length_ = 0;
    }
    return *this;
}

Tel::~Tel() { destroy(); }

void Tel::destroy() {
    TLNode* n = head_;
    while (n) {
        EdgeNode* e = n->head;
        while (e) {
            EdgeNode* next = e->tl_next;
            delete e;
            e = next;
        }
        TLNode* nn = n->next;
        delete n;
        n = nn;
    }
    head_ = tail_ = nullptr;
    verts_.clear();
    edge_count_ = live_vertices_ = timeline_length_ = 0;
}

void Tel::copy_from(const Tel& other) {
    verts_.resize(other.verts_.size());
    // Timeline order reproduces a valid insertion sequence.
    for (TLNode* n = other.head_; n; n = n->next)
        for (EdgeNode* e = n->head; e; e = e->tl_next) append(e->u, e->v, e->t);
}

void Tel::ensure_vertex(VertexId v) {
    if (v >= verts_.size()) verts_.resize(v + 1);
}

void Tel::append(VertexId u, VertexId v, Timestamp t) {
    ensure_vertex(u);
    ensure_vertex(v);
    TLNode* tl = tail_;
    if (!tl || tl->t != t) {
        tl = new TLNode{t};
        tl->prev = tail_;
        if (tail_)
            tail_->next = tl;
        else
            head_ = tl;
        tail_ = tl;
        ++timeline_length_;
        ++link_updates_;
    }
    auto* e = new EdgeNode{u, v, t};
    e->tl = tl;
    e->tl_prev = tl->tail;
    if (tl->tail)
        tl->tail->tl_next = e;
    else
        tl->head = e;
    tl->tail = e;
    ++tl->size;

    auto& vu = verts_[u];
    e->sl_prev = vu.sl_tail;
    if (vu.sl_tail)
        vu.sl_tail->sl_next = e;
    else
        vu.sl_head = e;
    vu.sl_tail = e;
    if (vu.incident++ == 0) ++live_vertices_;

    auto& vv = verts_[v];
    e->dl_prev = vv.dl_tail;
    if (vv.dl_tail)
        vv.dl_tail->dl_next = e;
    else
        vv.dl_head = e;
    vv.dl_tail = e;
    if (vv.incident++ == 0) ++live_vertices_;

    ++edge_count_;
    link_updates_ += 6;
}

void Tel::add_edge(VertexId u, VertexId v, Timestamp t) {
    if (tail_ && t < tail_->t)
        throw std::invalid_argument("add_edge: timestamp below current maximum (append-only)");
    append(u, v, t);
}

void Tel::unlink_from_sl_dl(EdgeNode* e) {
    auto& vu = verts_[e->u];
    if (e->sl_prev)
        e->sl_prev->sl_next = e->sl_next;
    else
        vu.sl_head = e->sl_next;
    if (e->sl_next)
        e->sl_next->sl_prev = e->sl_prev;
    else
        vu.sl_tail = e->sl_prev;
    if (--vu.incident == 0) --live_vertices_;

    auto& vv = verts_[e->v];
    if (e->dl_prev)
        e->dl_prev->dl_next = e->dl_next;
    else
        vv.dl_head = e->dl_next;
    if (e->dl_next)
        e->dl_next->dl_prev = e->dl_prev;
    else
        vv.dl_tail = e->dl_prev;
    if (--vv.incident == 0) --live_vertices_;

    link_updates_ += 4;
}

void Tel::del_edge(EdgeNode* e) {
    assert(e && e->tl);
    TLNode* tl = e->tl;
    if (e->tl_prev)
        e->tl_prev->tl_next = e->tl_next;
    else
        tl->head = e->tl_next;
    if (e->tl_next)
        e->tl_next->tl_prev = e->tl_prev;
    else
        tl->tail = e->tl_prev;
    --tl->size;
    link_updates_ += 2;

    unlink_from_sl_dl(e);
    --edge_count_;
    delete e;
}

void Tel::del_tl(TLNode* node) {
    assert(node);
    // Normally empty by the time it is discarded (edges are deleted
    // first); any stragglers are dropped with it.
    EdgeNode* e = node->head;
    while (e) {
        EdgeNode* next = e->tl_next;
        unlink_from_sl_dl(e);
        --edge_count_;
        delete e;
        e = next;
    }
    if (node->prev)
        node->prev->next = node->next;
    else
        head_ = node->next;
    if (node->next)
        node->next->prev = node->prev;
    else
        tail_ = node->prev;
    --timeline_length_;
    link_updates_ += 2;
    delete node;
}

EdgeNode* Tel::sl_head(VertexId v) const {
    return v < verts_.size() ? verts_[v].sl_head : nullptr;
}

EdgeNode* Tel::dl_head(VertexId v) const {
    return v < verts_.size() ? verts_[v].dl_head : nullptr;
}

std::optional<TimeInterval> Tel::tti() const {
    if (!head_) return std::nullopt;
    return TimeInterval{head_->t, tail_->t};
}

std::vector<TemporalEdge> Tel::collect_edges() const {
    std::vector<TemporalEdge> out;
    out.reserve(edge_count_);
    for (TLNode* n = head_; n; n = n->next)
        for (EdgeNode* e = n->head; e; e = e->tl_next) out.push_back({e->u, e->v, e->t});
    return out;
}

}  // namespace tkcq
