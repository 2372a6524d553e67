#ifndef TEMPSEP_INGEST_HPP
#define TEMPSEP_INGEST_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tempsep/core.hpp"

/*
 * Experiment instance builders: synthetic temporal graphs derived from
 * static transportation networks (TNTP net files) and real temporal graphs
 * from GTFS feeds restricted to a time window.
 */

namespace tempsep {

struct StaticGraph {
    int vertex_count = 0;
    std::vector<std::string> names;              // original node ids as strings
    std::vector<std::pair<int, int>> arcs;       // deduplicated, no self-loops
};

struct IntRange {
    int lo = 0;
    int hi = 0;
};

struct SynthesisParams {
    uint64_t seed = 0;
    Time horizon = 50;
    IntRange path_arc_labels{4, 8};       // timestamps per extracted-path arc
    IntRange background_labels{2, 5};     // timestamps per remaining static arc
    int deadline_multiplier = 3;
};

struct GtfsParams {
    int window_seconds = 7200;    // first two hours
    int bin_seconds = 60;
    double source_percentile = 0.10;
    double target_percentile = 0.50;
    int candidate_pool_growth = 5;
    bool trim_horizon = false;    // drop empty leading/trailing bins
};

// Parses the TNTP net-file dialect: <NUMBER OF NODES> / <NUMBER OF LINKS>
// metadata, '~'-prefixed header rows, then init_node/term_node data rows
// (all other columns ignored). 1-based node ids are remapped to dense
// 0-based ids; the original ids remain as names.
StaticGraph load_tntp(std::istream& in);
StaticGraph load_tntp_file(const std::string& path);

// What synthesize produced besides the instance; useful for reports and
// golden tests.
struct SynthesisTrace {
    std::vector<int> extracted_path_arc_counts;  // in extraction order
    VertexId source = 0;
    VertexId target = 0;
};

// Two-phase synthetic temporal graph construction:
//   s = max out-degree vertex, z = max in-degree vertex (ties by lowest id;
//   z falls to the next rank when equal to s). Phase 1 repeatedly extracts a
//   hop-count shortest s-z path (BFS, lowest-id tie-break), labels its arcs
//   with path_arc_labels-many distinct uniform timestamps, and deletes its
//   internal vertices, until s and z are separated. The deadline is
//   (arcs of first path) x multiplier, capped at T and raised to ceil(T/2).
//   Phase 2 labels every surviving non-path static arc with
//   background_labels-many distinct uniform timestamps.
Instance synthesize(const StaticGraph& static_graph, const SynthesisParams& params,
                    SynthesisTrace* trace = nullptr);

// Loads stops.txt / trips.txt / stop_times.txt from a directory and builds
// the temporal graph of the first window: each consecutive stop pair of a
// trip whose departure falls inside the window yields a temporal arc at
// timestamp ceil(departure / bin), clamped to [1, window/bin].
TemporalGraph load_gtfs(const std::string& directory, const GtfsParams& params);

struct GtfsEndpoints {
    VertexId source = 0;
    VertexId target = 0;
    Time deadline = 1;
};

// Ranks source candidates by out-degree within the first source_percentile
// of the window and target candidates by in-degree within the last
// (1 - target_percentile); tries ranked pairs, growing both pools by
// candidate_pool_growth until some pair admits a temporal s-z path. For the
// chosen pair, d = min(2 x smallest traveling time, T).
GtfsEndpoints select_endpoints_gtfs(const TemporalGraph& graph, const GtfsParams& params);

}  // namespace tempsep

#endif
