#ifndef TEMPSEP_IO_HPP
#define TEMPSEP_IO_HPP

#include <string>

#include "tempsep/core.hpp"
#include "tempsep/pathfind.hpp"

/*
 * Native file formats shared by all CLI commands.
 *
 * Instance document (JSON, canonical field order, arcs sorted by (u, v)):
 *   { "version": 1, "T": ..., "vertices": [names...],
 *     "arcs": [{"u":i,"v":j,"times":[...]}, ...],
 *     "source": i, "target": j, "deadline": d }
 *
 * Timeline document (JSON, one key per vertex in id order):
 *   { "<vertex name>": [lo, hi] | null, ... }
 *
 * Report files are append-only CSV with a schema-version comment line.
 */

namespace tempsep {

std::string write_instance(const Instance& instance);
Instance parse_instance(const std::string& text);
Instance load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const Instance& instance);

std::string write_timeline(const TemporalGraph& graph, const SeparatorTimeline& timeline);
SeparatorTimeline parse_timeline(const TemporalGraph& graph, const std::string& text);
SeparatorTimeline load_timeline_file(const TemporalGraph& graph, const std::string& path);
void save_timeline_file(const std::string& path, const TemporalGraph& graph,
                        const SeparatorTimeline& timeline);

// One row of the experiment report; columns mirror the solver summary
// tables (SL, |V_sep|, Avg. Int., #P, Time).
struct RunRecord {
    std::string dataset;
    int vertices = 0;
    size_t temporal_arcs = 0;
    Time horizon = 0;
    Time deadline = 0;
    long long separator_length = 0;
    int separator_vertices = 0;
    double avg_interval = 0.0;
    std::string path_count;      // decimal; may be a partial count
    bool path_count_exact = false;
    double time_seconds = 0.0;
    std::string mode;
    uint64_t seed = 0;
};

extern const char* kReportSchemaLine;
extern const char* kReportHeaderLine;

std::string format_run_record(const RunRecord& record);

// Appends a record, writing the schema and header lines first when the file
// is new or empty.
void append_run_record(const std::string& path, const RunRecord& record);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace tempsep

#endif
