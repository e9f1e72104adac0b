#include "tkcq/engine.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace tkcq {

namespace {

std::vector<Timestamp> domain_in_range(const TemporalGraph& graph, TimeInterval range) {
    std::vector<Timestamp> d;
    for (Timestamp t : graph.timeline_domain)
        if (t >= range.ts && t <= range.te) d.push_back(t);
    return d;
}

void note_peak(QueryStats& stats, std::size_t live_edges) {
    stats.peak_tel_edges = std::max(stats.peak_tel_edges, live_edges);
}

void materialize(CoreSummary& s, const Tel& tel) {
    auto edges = tel.collect_edges();
    std::set<VertexId> vs;
    for (const auto& e : edges) {
        vs.insert(e.u);
        vs.insert(e.v);
    }
    s.vertices = std::vector<VertexId>(vs.begin(), vs.end());
    s.edges = std::move(edges);
}

}  // namespace

PruneSchedule::PruneSchedule(std::vector<Timestamp> domain)
    : domain_(std::move(domain)), rows_(domain_.size()) {}

std::optional<std::size_t> PruneSchedule::idx_floor(Timestamp t) const {
    auto it = std::upper_bound(domain_.begin(), domain_.end(), t);
    if (it == domain_.begin()) return std::nullopt;
    return static_cast<std::size_t>(std::prev(it) - domain_.begin());
}

std::optional<std::size_t> PruneSchedule::idx_ceil(Timestamp t) const {
    auto it = std::lower_bound(domain_.begin(), domain_.end(), t);
    if (it == domain_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - domain_.begin());
}

bool PruneSchedule::covered(std::size_t row, std::size_t col) const {
    if (row >= rows_.size()) return false;
    const auto& m = rows_[row];
    auto it = m.upper_bound(col);
    if (it == m.begin()) return false;
    return std::prev(it)->second >= col;
}

std::size_t PruneSchedule::cover(std::size_t row, std::size_t lo, std::size_t hi) {
    if (row >= rows_.size()) return 0;
    lo = std::max(lo, row);  // cells below the diagonal do not exist
    hi = std::min(hi, rows_.size() - 1);
    if (lo > hi) return 0;
    auto& m = rows_[row];
    std::size_t nlo = lo, nhi = hi, overlap = 0;
    auto it = m.lower_bound(lo);
    if (it != m.begin() && std::prev(it)->second + 1 >= lo) --it;
    while (it != m.end() && it->first <= hi + 1) {
        nlo = std::min(nlo, it->first);
        nhi = std::max(nhi, it->second);
        std::size_t olo = std::max(it->first, lo), ohi = std::min(it->second, hi);
        if (olo <= ohi) overlap += ohi - olo + 1;
        it = m.erase(it);
    }
    m[nlo] = nhi;
    return (hi - lo + 1) - overlap;
}

bool PruneSchedule::row_fully_covered(std::size_t row) const {
    if (row >= rows_.size()) return false;
    const auto& m = rows_[row];
    auto it = m.upper_bound(row);
    if (it == m.begin()) return false;
    --it;
    return it->second + 1 >= rows_.size();
}

std::optional<std::size_t> PruneSchedule::next_unpruned(std::size_t row,
                                                        std::size_t from) const {
    if (row >= rows_.size()) return std::nullopt;
    std::size_t j = std::min(from, rows_.size() - 1);
    const auto& m = rows_[row];
    for (;;) {
        if (j < row) return std::nullopt;
        auto it = m.upper_bound(j);
        if (it == m.begin() || std::prev(it)->second < j) return j;
        std::size_t start = std::prev(it)->first;
        if (start == 0) return std::nullopt;
        j = start - 1;
    }
}

std::vector<std::pair<std::size_t, std::size_t>> PruneSchedule::covered_cells() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [lo, hi] : rows_[r])
            for (std::size_t c = std::max(lo, r); c <= hi; ++c) out.emplace_back(r, c);
    return out;
}

void apply_pruning(PruneSchedule& schedule, TimeInterval cell, TimeInterval tti,
                   Timestamp range_end) {
    assert(interval_contains(cell, tti));
    assert(cell.te <= range_end);
    (void)range_end;
    auto row = schedule.idx_floor(cell.ts);
    auto cte = schedule.idx_floor(cell.te);
    auto tts = schedule.idx_floor(tti.ts);
    auto tte = schedule.idx_floor(tti.te);
    assert(row && cte && tts && tte);
    if (tti.te < cell.te) {  // PoR: same row, columns [tti.te, cell.te - 1]
        ++schedule.por.triggers;
        schedule.por.cells += schedule.cover(*row, *tte, *cte - 1);
    }
    if (tti.ts > cell.ts) {  // PoU: rows (cell.ts, tti.ts], columns [r, cell.te]
        ++schedule.pou.triggers;
        for (std::size_t r = *row + 1; r <= *tts; ++r)
            schedule.pou.cells += schedule.cover(r, r, *cte);
    }
    if (tti.ts > cell.ts && tti.te < cell.te) {  // PoL: rows (tti.ts, tti.te], columns [tti.te + 1, cell.te]
        ++schedule.pol.triggers;
        for (std::size_t r = *tts + 1; r <= *tte; ++r)
            schedule.pol.cells += schedule.cover(r, *tte + 1, *cte);
    }
}

std::optional<Timestamp> next_unpruned_column(const PruneSchedule& schedule, Timestamp row,
                                              Timestamp from) {
    auto r = schedule.idx_floor(row);
    auto f = schedule.idx_floor(from);
    if (!r || !f) return std::nullopt;
    auto j = schedule.next_unpruned(*r, *f);
    if (!j) return std::nullopt;
    return schedule.domain()[*j];
}

bool register_result(ResultSet& results, const Tel& tel, const QuerySpec& spec) {
    auto tti = tel.tti();
    assert(tti);
    auto [it, inserted] = results.cores.try_emplace(*tti);
    if (!inserted) return false;
    it->second.tti = *tti;
    it->second.vertex_count = tel.vertex_count();
    it->second.edge_count = tel.edge_count();
    if (spec.materialize) materialize(it->second, tel);
    return true;
}

ResultSet tcd_enumerate(const TemporalGraph& graph, const QuerySpec& spec) {
    ResultSet rs;
    auto domain = domain_in_range(graph, spec.range);
    std::size_t n = domain.size();
    rs.stats.total_cells = n * (n + 1) / 2;
    if (n == 0) return rs;

    Tel head(graph);
    DegreeState hst(head);
    note_peak(rs.stats, head.edge_count());
    for (std::size_t i = 0; i < n; ++i) {
        auto tti = tcd(head, hst, spec.k, {domain[i], domain[n - 1]}, spec.sigma);
        ++rs.stats.tcd_ops;
        ++rs.stats.cells_visited;
        if (!tti) {
            ++rs.stats.empties;
            break;  // every remaining cell is empty as well
        }
        ++rs.stats.nonempty_inductions;
        if (!register_result(rs, head, spec)) ++rs.stats.duplicate_inductions;
        Tel work(head);
        DegreeState wst(hst);
        note_peak(rs.stats, head.edge_count() + work.edge_count());
        for (std::size_t j = n - 1; j-- > i;) {
            auto wt = tcd(work, wst, spec.k, {domain[i], domain[j]}, spec.sigma);
            ++rs.stats.tcd_ops;
            ++rs.stats.cells_visited;
            if (!wt) {
                ++rs.stats.empties;
                break;  // the row only shrinks further
            }
            ++rs.stats.nonempty_inductions;
            if (!register_result(rs, work, spec)) ++rs.stats.duplicate_inductions;
        }
    }
    return rs;
}

ResultSet otcd_enumerate(const TemporalGraph& graph, const QuerySpec& spec,
                         PruneSchedule* schedule_out) {
    ResultSet rs;
    auto domain = domain_in_range(graph, spec.range);
    std::size_t n = domain.size();
    rs.stats.total_cells = n * (n + 1) / 2;
    PruneSchedule sched(domain);
    if (n == 0) {
        if (schedule_out) *schedule_out = sched;
        return rs;
    }

    Tel head(graph);
    DegreeState hst(head);
    note_peak(rs.stats, head.edge_count());
    for (std::size_t i = 0; i < n; ++i) {
        // Rows with every cell pruned are skipped without advancing the
        // head; the next needed head is induced directly from the last
        // materialized one (valid nesting).
        if (i > 0 && sched.row_fully_covered(i)) continue;
        auto tti = tcd(head, hst, spec.k, {domain[i], domain[n - 1]}, spec.sigma);
        ++rs.stats.tcd_ops;
        note_peak(rs.stats, head.edge_count());
        if (!tti) {
            ++rs.stats.empties;
            break;  // empty head empties all remaining rows
        }
        std::optional<std::size_t> j;  // next column to consider
        if (!sched.covered(i, n - 1)) {
            // The head advance doubles as the evaluation of cell (i, n-1).
            ++rs.stats.cells_visited;
            ++rs.stats.nonempty_inductions;
            // A duplicate here means the head core's TTI fell back into an
            // already-pruned stretch of this row; no rule can predict that
            // without performing the decomposition, so it is counted, not
            // prevented.
            if (!register_result(rs, head, spec)) ++rs.stats.duplicate_inductions;
            apply_pruning(sched, {domain[i], domain[n - 1]}, *tti, domain[n - 1]);
            std::size_t te_idx = *sched.idx_floor(tti->te);  // PoR jump target + 1
            if (te_idx > i) j = te_idx - 1;
        } else {
            j = n - 1;  // row head cell was pruned; search downward from it
        }
        Tel work;
        DegreeState wst;
        bool have_work = false;
        while (j && *j >= i) {
            auto col = sched.next_unpruned(i, *j);
            if (!col) break;
            if (!have_work) {
                work = head;
                wst = hst;
                have_work = true;
            }
            auto wt = tcd(work, wst, spec.k, {domain[i], domain[*col]}, spec.sigma);
            ++rs.stats.tcd_ops;
            ++rs.stats.cells_visited;
            note_peak(rs.stats, head.edge_count() + work.edge_count());
            if (!wt) {
                ++rs.stats.empties;
                break;
            }
            ++rs.stats.nonempty_inductions;
            if (!register_result(rs, work, spec)) ++rs.stats.duplicate_inductions;
            apply_pruning(sched, {domain[i], domain[*col]}, *wt, domain[n - 1]);
            std::size_t te_idx = *sched.idx_floor(wt->te);
            if (te_idx <= i) break;
            j = te_idx - 1;
        }
    }
    rs.stats.por = sched.por;
    rs.stats.pou = sched.pou;
    rs.stats.pol = sched.pol;
    if (schedule_out) *schedule_out = std::move(sched);
    return rs;
}

ResultSet brute_force_enumerate(const TemporalGraph& graph, const QuerySpec& spec) {
    ResultSet rs;
    auto domain = domain_in_range(graph, spec.range);
    std::size_t n = domain.size();
    rs.stats.total_cells = n * (n + 1) / 2;
    if (n == 0) return rs;

    std::vector<TemporalEdge> ranged;
    for (const auto& e : graph.edges)
        if (e.t >= domain.front() && e.t <= domain.back()) ranged.push_back(e);

    std::unordered_set<std::uint64_t> fingerprints;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            ++rs.stats.cells_visited;
            std::vector<TemporalEdge> proj;
            for (const auto& e : ranged)
                if (e.t >= domain[i] && e.t <= domain[j]) proj.push_back(e);
            // Strength filter: a pair below sigma is dropped wholesale.
            std::unordered_map<std::uint64_t, std::uint32_t> mult;
            for (const auto& e : proj) {
                std::uint64_t key = e.u < e.v
                                        ? (static_cast<std::uint64_t>(e.u) << 32) | e.v
                                        : (static_cast<std::uint64_t>(e.v) << 32) | e.u;
                ++mult[key];
            }
            std::unordered_map<VertexId, std::unordered_set<VertexId>> adj;
            auto kept = [&](VertexId a, VertexId b) {
                std::uint64_t key = a < b ? (static_cast<std::uint64_t>(a) << 32) | b
                                          : (static_cast<std::uint64_t>(b) << 32) | a;
                return mult[key] >= spec.sigma;
            };
            for (const auto& e : proj) {
                if (!kept(e.u, e.v)) continue;
                adj[e.u].insert(e.v);
                adj[e.v].insert(e.u);
            }
            auto core = simple_core_decompose(adj, spec.k);
            if (core.empty()) {
                ++rs.stats.empties;
                continue;
            }
            std::unordered_set<VertexId> in_core(core.begin(), core.end());
            std::vector<TemporalEdge> core_edges;
            for (const auto& e : proj)
                if (in_core.count(e.u) && in_core.count(e.v) && kept(e.u, e.v))
                    core_edges.push_back(e);
            assert(!core_edges.empty());
            ++rs.stats.nonempty_inductions;
            Timestamp lo = core_edges.front().t, hi = core_edges.front().t;
            for (const auto& e : core_edges) {
                lo = std::min(lo, e.t);
                hi = std::max(hi, e.t);
            }
            TimeInterval tti{lo, hi};
            std::uint64_t fp = edge_fingerprint(core_edges);
            auto [it, inserted] = rs.cores.try_emplace(tti);
            if (!inserted) ++rs.stats.duplicate_inductions;
            if (inserted) {
                fingerprints.insert(fp);
                it->second.tti = tti;
                it->second.vertex_count = core.size();
                it->second.edge_count = core_edges.size();
                if (spec.materialize) {
                    it->second.vertices = core;
                    it->second.edges = canonical_edges(core_edges);
                }
            } else if (!fingerprints.count(fp)) {
                // Property 2 violated: equal TTIs must mean equal graphs.
                throw std::logic_error("brute force: TTI collision with differing edge sets");
            }
        }
    }
    if (fingerprints.size() != rs.cores.size())
        throw std::logic_error("brute force: fingerprint dedup disagrees with TTI dedup");
    return rs;
}

namespace {

void post_filter(ResultSet& rs, const QuerySpec& spec) {
    if (spec.max_span) {
        for (auto it = rs.cores.begin(); it != rs.cores.end();)
            it = it->first.span() > *spec.max_span ? rs.cores.erase(it) : std::next(it);
    }
    if (spec.top_n_shortest && rs.cores.size() > *spec.top_n_shortest) {
        std::vector<TimeInterval> keys;
        for (const auto& [tti, _] : rs.cores) keys.push_back(tti);
        std::stable_sort(keys.begin(), keys.end(), [](const TimeInterval& a, const TimeInterval& b) {
            return a.span() != b.span() ? a.span() < b.span() : a < b;
        });
        keys.resize(*spec.top_n_shortest);
        std::set<TimeInterval> keep(keys.begin(), keys.end());
        for (auto it = rs.cores.begin(); it != rs.cores.end();)
            it = keep.count(it->first) ? std::next(it) : rs.cores.erase(it);
    }
}

}  // namespace

ResultSet run_query(const TemporalGraph& graph, const QuerySpec& spec) {
    if (spec.k < 1) throw std::invalid_argument("k must be >= 1");
    if (spec.sigma < 1) throw std::invalid_argument("sigma must be >= 1");
    if (spec.range.ts > spec.range.te) throw std::invalid_argument("range start exceeds end");
    if (spec.max_span && *spec.max_span < 0) throw std::invalid_argument("max_span must be >= 0");
    auto t0 = std::chrono::steady_clock::now();
    ResultSet rs;
    switch (spec.algorithm) {
        case Algorithm::otcd: rs = otcd_enumerate(graph, spec); break;
        case Algorithm::tcd: rs = tcd_enumerate(graph, spec); break;
        case Algorithm::brute: rs = brute_force_enumerate(graph, spec); break;
    }
    post_filter(rs, spec);
    rs.stats.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rs;
}

std::vector<std::vector<VertexId>> connected_components(const CoreSummary& core) {
    if (!core.vertices || !core.edges)
        throw std::invalid_argument("connected_components requires a materialized core");
    const auto& vs = *core.vertices;
    std::unordered_map<VertexId, std::size_t> index;
    for (std::size_t i = 0; i < vs.size(); ++i) index[vs[i]] = i;
    std::vector<std::size_t> parent(vs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : *core.edges) parent[find(index.at(e.u))] = find(index.at(e.v));
    std::map<std::size_t, std::vector<VertexId>> groups;
    for (std::size_t i = 0; i < vs.size(); ++i) groups[find(i)].push_back(vs[i]);
    std::vector<std::vector<VertexId>> out;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tkcq
