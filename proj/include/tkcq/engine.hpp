#ifndef TKCQ_ENGINE_HPP
#define TKCQ_ENGINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tkcq/decompose.hpp"
#include "tkcq/graph.hpp"
#include "tkcq/tel.hpp"

namespace tkcq {

enum class Algorithm { otcd, tcd, brute };

struct QuerySpec {
    std::uint32_t k = 1;
    TimeInterval range;
    std::uint32_t sigma = 1;
    std::optional<Timestamp> max_span;
    std::optional<std::size_t> top_n_shortest;
    Algorithm algorithm = Algorithm::otcd;
    bool materialize = false;
};

struct RuleStats {
    std::size_t triggers = 0;
    std::size_t cells = 0;
};

struct QueryStats {
    std::size_t cells_visited = 0;        // cells actually evaluated on the schedule
    std::size_t tcd_ops = 0;              // all decompositions, including row-head maintenance
    std::size_t nonempty_inductions = 0;  // nonempty decompositions at evaluated cells
    // Evaluated cells whose core repeated an already-collected TTI. The
    // published claim is that pruning reduces this to zero; that holds for
    // the paper's schedules but not universally (see README), so the count
    // is tracked instead of assumed. Always nonempty_inductions =
    // distinct cores + duplicate_inductions.
    std::size_t duplicate_inductions = 0;
    std::size_t empties = 0;
    RuleStats por, pou, pol;
    std::size_t total_cells = 0;          // n(n+1)/2 over the timeline domain
    std::size_t peak_tel_edges = 0;
    double wall_time_ms = 0.0;

    double pruned_percent() const {
        return total_cells == 0
                   ? 0.0
                   : 100.0 * static_cast<double>(por.cells + pou.cells + pol.cells) /
                         static_cast<double>(total_cells);
    }
};

struct ResultSet {
    std::map<TimeInterval, CoreSummary> cores;  // keyed by TTI, ascending (ts, te)
    QueryStats stats;
};

// Per-row sets of pruned column intervals. Rows and columns are the
// distinct timestamps of the projected graph over the query range;
// intervals are stored in timestamp values and interpreted over that
// domain.
class PruneSchedule {
public:
    PruneSchedule() = default;
    explicit PruneSchedule(std::vector<Timestamp> domain);

    std::size_t size() const { return domain_.size(); }
    const std::vector<Timestamp>& domain() const { return domain_; }

    bool covered(std::size_t row, std::size_t col) const;
    // Marks columns [lo, hi] of a row; returns the number of cells newly covered.
    std::size_t cover(std::size_t row, std::size_t lo, std::size_t hi);
    bool row_fully_covered(std::size_t row) const;
    // Largest uncovered column index <= from with col >= row.
    std::optional<std::size_t> next_unpruned(std::size_t row, std::size_t from) const;

    // Timestamp <-> domain index. floor: largest domain ts <= t;
    // ceil: smallest domain ts >= t.
    std::optional<std::size_t> idx_floor(Timestamp t) const;
    std::optional<std::size_t> idx_ceil(Timestamp t) const;

    RuleStats por, pou, pol;

    std::vector<std::pair<std::size_t, std::size_t>> covered_cells() const;  // (row, col) pairs

private:
    std::vector<Timestamp> domain_;
    // Per row: disjoint merged [start, end] column-index intervals.
    std::vector<std::map<std::size_t, std::size_t>> rows_;
};

// Records the PoR/PoU/PoL consequences of inducing the core with the
// given TTI at the given cell. PoR is realized by the enumeration loop
// as an in-row jump; its cells are still recorded and counted.
void apply_pruning(PruneSchedule& schedule, TimeInterval cell, TimeInterval tti,
                   Timestamp range_end);

// Largest unpruned column timestamp <= from in the row, or nullopt.
std::optional<Timestamp> next_unpruned_column(const PruneSchedule& schedule, Timestamp row,
                                              Timestamp from);

// Inserts the TEL's core into the result set if its TTI is unseen.
bool register_result(ResultSet& results, const Tel& tel, const QuerySpec& spec);

ResultSet tcd_enumerate(const TemporalGraph& graph, const QuerySpec& spec);
ResultSet otcd_enumerate(const TemporalGraph& graph, const QuerySpec& spec,
                         PruneSchedule* schedule_out = nullptr);
// Exhaustive per-cell oracle; intended for desk-scale inputs. Verifies
// that TTI-keyed and fingerprint-keyed dedup agree.
ResultSet brute_force_enumerate(const TemporalGraph& graph, const QuerySpec& spec);

// Dispatches on spec.algorithm and applies the span/top-n post-filters.
ResultSet run_query(const TemporalGraph& graph, const QuerySpec& spec);

std::vector<std::vector<VertexId>> connected_components(const CoreSummary& core);

}  // namespace tkcq

#endif  // TKCQ_ENGINE_HPP
