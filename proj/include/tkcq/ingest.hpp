#ifndef TKCQ_INGEST_HPP
#define TKCQ_INGEST_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "tkcq/graph.hpp"

namespace tkcq {

enum class ColumnOrder { src_dst_t, src_dst_w_t };  // the weight column is ignored

struct ParseConfig {
    ColumnOrder column_order = ColumnOrder::src_dst_t;
    std::string comment_prefixes = "#%";
    bool normalize = true;  // timestamps become t - t_min + 1
    bool lenient = false;   // tolerate malformed lines instead of failing
};

struct ParseReport {
    std::size_t lines = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t malformed_lines = 0;
    std::size_t duplicate_edges = 0;  // exact (u,v,t) repeats, retained
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parses whitespace-separated "u v t" (or "u v w t") lines. Vertices are
// interned to dense ids in first-appearance order; self-loops are
// dropped; edges end up stably sorted by timestamp.
TemporalGraph parse_edge_list(std::istream& input, const ParseConfig& config,
                              ParseReport* report = nullptr);

// File loader with transparent gzip decompression for *.gz paths.
TemporalGraph load_graph_file(const std::string& path, const ParseConfig& config,
                              ParseReport* report = nullptr);

struct GraphStats {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    double span_days = 0.0;  // raw span before normalization
    std::size_t distinct_timestamps = 0;
};

GraphStats graph_stats(const TemporalGraph& graph);

// "u v t" lines in edge order; reuses external ids when present.
void write_edge_list(std::ostream& out, const TemporalGraph& graph);

}  // namespace tkcq

#endif  // TKCQ_INGEST_HPP
