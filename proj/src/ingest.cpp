#include "tempsep/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tempsep/pathfind.hpp"
#include "tempsep/rng.hpp"

namespace fs = std::filesystem;

namespace tempsep {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_int(const std::string& token, long long& out) {
    if (token.empty()) return false;
    size_t pos = 0;
    try {
        out = std::stoll(token, &pos);
    } catch (...) {
        return false;
    }
    return pos == token.size();
}

}  // namespace

// ---------------------------------------------------------------------------
// TNTP
// ---------------------------------------------------------------------------

StaticGraph load_tntp(std::istream& in) {
    long long declared_nodes = -1;
    long long declared_links = -1;
    bool in_metadata = true;
    std::string line;
    int line_no = 0;
    std::vector<std::pair<int, int>> raw;

    while (std::getline(in, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty() || text[0] == '~') continue;
        if (text[0] == '<') {
            size_t close = text.find('>');
            if (close == std::string::npos)
                fail(ErrorKind::parse_error,
                     "line " + std::to_string(line_no) + ": unterminated metadata tag");
            std::string tag = text.substr(1, close - 1);
            std::string value = trim(text.substr(close + 1));
            long long parsed = 0;
            if (tag == "NUMBER OF NODES") {
                if (!parse_int(value, parsed) || parsed < 0)
                    fail(ErrorKind::parse_error,
                         "line " + std::to_string(line_no) + ": bad node count");
                declared_nodes = parsed;
            } else if (tag == "NUMBER OF LINKS") {
                if (!parse_int(value, parsed) || parsed < 0)
                    fail(ErrorKind::parse_error,
                         "line " + std::to_string(line_no) + ": bad link count");
                declared_links = parsed;
            } else if (tag == "END OF METADATA") {
                in_metadata = false;
            }
            continue;
        }
        if (in_metadata)
            fail(ErrorKind::parse_error,
                 "line " + std::to_string(line_no) + ": data before <END OF METADATA>");
        // Data row: init_node term_node [other columns...] ;
        std::string row = text;
        if (!row.empty() && row.back() == ';') row.pop_back();
        std::istringstream tokens(row);
        std::string a, b;
        if (!(tokens >> a >> b))
            fail(ErrorKind::parse_error,
                 "line " + std::to_string(line_no) + ": expected init_node term_node");
        long long u = 0, v = 0;
        if (!parse_int(a, u) || !parse_int(b, v))
            fail(ErrorKind::parse_error,
                 "line " + std::to_string(line_no) + ": node ids must be integers");
        if (declared_nodes < 0)
            fail(ErrorKind::parse_error,
                 "line " + std::to_string(line_no) + ": missing NUMBER OF NODES header");
        if (u < 1 || u > declared_nodes || v < 1 || v > declared_nodes)
            fail(ErrorKind::parse_error,
                 "line " + std::to_string(line_no) + ": node id outside [1, " +
                     std::to_string(declared_nodes) + "]");
        raw.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }

    if (declared_nodes < 0) fail(ErrorKind::parse_error, "missing NUMBER OF NODES header");
    if (declared_links >= 0 && declared_links != static_cast<long long>(raw.size()))
        fail(ErrorKind::inconsistent_header,
             "declared " + std::to_string(declared_links) + " links, found " +
                 std::to_string(raw.size()));

    StaticGraph g;
    g.vertex_count = static_cast<int>(declared_nodes);
    g.names.reserve(static_cast<size_t>(declared_nodes));
    for (int i = 1; i <= declared_nodes; ++i) g.names.push_back(std::to_string(i));
    std::set<std::pair<int, int>> dedup;
    for (auto [u, v] : raw) {
        if (u == v) continue;  // normalize away self-loops
        dedup.emplace(u - 1, v - 1);
    }
    g.arcs.assign(dedup.begin(), dedup.end());
    return g;
}

StaticGraph load_tntp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::missing_file, path);
    return load_tntp(in);
}

// ---------------------------------------------------------------------------
// Synthetic temporal graphs
// ---------------------------------------------------------------------------

namespace {

struct Residual {
    const StaticGraph& g;
    std::vector<std::vector<int>> adjacency;  // sorted targets
    std::vector<char> alive;
    std::set<std::pair<int, int>> deleted_arcs;

    explicit Residual(const StaticGraph& graph) : g(graph) {
        adjacency.resize(static_cast<size_t>(graph.vertex_count));
        for (const auto& [u, v] : graph.arcs)
            adjacency[static_cast<size_t>(u)].push_back(v);
        for (auto& lst : adjacency) std::sort(lst.begin(), lst.end());
        alive.assign(static_cast<size_t>(graph.vertex_count), 1);
    }

    // Hop-count shortest path, neighbors explored in ascending id order.
    std::vector<std::pair<int, int>> shortest_path(int s, int z) const {
        std::vector<int> parent(static_cast<size_t>(g.vertex_count), -1);
        std::deque<int> queue;
        parent[static_cast<size_t>(s)] = s;
        queue.push_back(s);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            if (u == z) break;
            for (int v : adjacency[static_cast<size_t>(u)]) {
                if (!alive[static_cast<size_t>(v)]) continue;
                if (parent[static_cast<size_t>(v)] != -1) continue;
                if (deleted_arcs.count({u, v})) continue;
                parent[static_cast<size_t>(v)] = u;
                queue.push_back(v);
            }
        }
        std::vector<std::pair<int, int>> path;
        if (parent[static_cast<size_t>(z)] == -1) return path;
        for (int v = z; v != s; v = parent[static_cast<size_t>(v)])
            path.emplace_back(parent[static_cast<size_t>(v)], v);
        std::reverse(path.begin(), path.end());
        return path;
    }
};

}  // namespace

Instance synthesize(const StaticGraph& static_graph, const SynthesisParams& params,
                    SynthesisTrace* trace) {
    if (static_graph.vertex_count < 3)
        fail(ErrorKind::degenerate_endpoints, "need at least 3 vertices");
    if (params.horizon < 1) fail(ErrorKind::bad_params, "horizon must be >= 1");
    auto check_range = [&](const IntRange& r, const char* what) {
        if (r.lo < 1 || r.lo > r.hi || r.hi > params.horizon)
            fail(ErrorKind::bad_params,
                 std::string(what) + " label range must satisfy 1 <= lo <= hi <= T");
    };
    check_range(params.path_arc_labels, "path");
    check_range(params.background_labels, "background");
    if (params.deadline_multiplier < 1)
        fail(ErrorKind::bad_params, "deadline multiplier must be >= 1");

    const int n = static_graph.vertex_count;
    std::vector<int> out_deg(static_cast<size_t>(n), 0), in_deg(static_cast<size_t>(n), 0);
    for (const auto& [u, v] : static_graph.arcs) {
        ++out_deg[static_cast<size_t>(u)];
        ++in_deg[static_cast<size_t>(v)];
    }
    int s = 0;
    for (int v = 1; v < n; ++v)
        if (out_deg[static_cast<size_t>(v)] > out_deg[static_cast<size_t>(s)]) s = v;
    std::vector<int> by_in(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) by_in[static_cast<size_t>(v)] = v;
    std::sort(by_in.begin(), by_in.end(), [&](int a, int b) {
        return std::make_pair(-in_deg[static_cast<size_t>(a)], a) <
               std::make_pair(-in_deg[static_cast<size_t>(b)], b);
    });
    int z = by_in[0] != s ? by_in[0] : (n > 1 ? by_in[1] : s);
    if (s == z) fail(ErrorKind::degenerate_endpoints, "could not pick distinct endpoints");

    // Phase 1: extract shortest s-z paths until separated.
    Residual residual(static_graph);
    std::vector<std::vector<std::pair<int, int>>> extracted;
    for (;;) {
        auto path = residual.shortest_path(s, z);
        if (path.empty()) break;
        extracted.push_back(path);
        bool any_internal = false;
        for (const auto& [u, v] : path) {
            if (u != s && u != z) {
                residual.alive[static_cast<size_t>(u)] = 0;
                any_internal = true;
            }
            if (v != s && v != z) {
                residual.alive[static_cast<size_t>(v)] = 0;
                any_internal = true;
            }
        }
        // A direct s-z arc has nothing to delete; remove the arc itself so
        // the loop can make progress.
        if (!any_internal)
            for (const auto& arc : path) residual.deleted_arcs.insert(arc);
    }
    if (extracted.empty())
        fail(ErrorKind::no_path, "source and target are disconnected in the static network");

    SplitMix64 rng(params.seed);
    std::vector<ArcSpec> arc_specs;
    std::set<std::pair<int, int>> path_arcs;
    for (const auto& path : extracted) {
        for (const auto& [u, v] : path) {
            path_arcs.insert({u, v});
            int k = static_cast<int>(
                rng.range(params.path_arc_labels.lo, params.path_arc_labels.hi));
            auto sampled = rng.sample_distinct(1, params.horizon, k);
            ArcSpec spec;
            spec.from = static_cast<VertexId>(u);
            spec.to = static_cast<VertexId>(v);
            spec.times.assign(sampled.begin(), sampled.end());
            arc_specs.push_back(std::move(spec));
        }
    }

    // Deadline from the first extracted path, capped at T, floored at
    // ceil(T/2).
    Time deadline = static_cast<Time>(std::min<long long>(
        static_cast<long long>(extracted.front().size()) * params.deadline_multiplier,
        params.horizon));
    deadline = std::max<Time>(deadline, (params.horizon + 1) / 2);

    // Phase 2: label every surviving non-path static arc.
    for (const auto& [u, v] : static_graph.arcs) {
        if (!residual.alive[static_cast<size_t>(u)] || !residual.alive[static_cast<size_t>(v)])
            continue;
        if (path_arcs.count({u, v}) || residual.deleted_arcs.count({u, v})) continue;
        int k = static_cast<int>(
            rng.range(params.background_labels.lo, params.background_labels.hi));
        auto sampled = rng.sample_distinct(1, params.horizon, k);
        ArcSpec spec;
        spec.from = static_cast<VertexId>(u);
        spec.to = static_cast<VertexId>(v);
        spec.times.assign(sampled.begin(), sampled.end());
        arc_specs.push_back(std::move(spec));
    }

    if (trace) {
        trace->extracted_path_arc_counts.clear();
        for (const auto& path : extracted)
            trace->extracted_path_arc_counts.push_back(static_cast<int>(path.size()));
        trace->source = static_cast<VertexId>(s);
        trace->target = static_cast<VertexId>(z);
    }

    // Deleted vertices come back in the output; only phase-1 extraction is
    // destructive. Temporal arcs exist only where labels were assigned.
    auto graph = TemporalGraph::build(static_graph.names, arc_specs, params.horizon);
    return Instance::make(std::move(graph), static_cast<VertexId>(s), static_cast<VertexId>(z),
                          deadline);
}

// ---------------------------------------------------------------------------
// GTFS
// ---------------------------------------------------------------------------

namespace {

// Minimal CSV split with double-quote handling.
std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

int find_column(const std::vector<std::string>& header, const std::string& name,
                const std::string& file) {
    for (size_t i = 0; i < header.size(); ++i)
        if (trim(header[i]) == name) return static_cast<int>(i);
    fail(ErrorKind::parse_error, file + ": missing required column '" + name + "'");
}

// HH:MM:SS with possibly >= 24 hours; returns seconds since midnight.
long long parse_gtfs_time(const std::string& text) {
    std::string t = trim(text);
    size_t c1 = t.find(':');
    size_t c2 = c1 == std::string::npos ? std::string::npos : t.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || t.find(':', c2 + 1) != std::string::npos)
        fail(ErrorKind::malformed_time, "'" + text + "'");
    long long h = 0, m = 0, s = 0;
    if (!parse_int(t.substr(0, c1), h) || !parse_int(t.substr(c1 + 1, c2 - c1 - 1), m) ||
        !parse_int(t.substr(c2 + 1), s) || h < 0 || m < 0 || m > 59 || s < 0 || s > 59)
        fail(ErrorKind::malformed_time, "'" + text + "'");
    return h * 3600 + m * 60 + s;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::missing_file, path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TemporalGraph load_gtfs(const std::string& directory, const GtfsParams& params) {
    if (params.window_seconds < 1 || params.bin_seconds < 1 ||
        params.window_seconds % params.bin_seconds != 0)
        fail(ErrorKind::bad_params, "bin size must evenly divide the window");

    const std::string stops_path = (fs::path(directory) / "stops.txt").string();
    const std::string trips_path = (fs::path(directory) / "trips.txt").string();
    const std::string stop_times_path = (fs::path(directory) / "stop_times.txt").string();
    if (!fs::exists(trips_path)) fail(ErrorKind::missing_file, trips_path);

    auto stop_lines = read_lines(stops_path);
    if (stop_lines.empty()) fail(ErrorKind::parse_error, stops_path + ": empty file");
    auto stop_header = csv_split(stop_lines[0]);
    int stop_id_col = find_column(stop_header, "stop_id", "stops.txt");
    std::vector<std::string> names;
    std::map<std::string, VertexId> stop_index;
    for (size_t i = 1; i < stop_lines.size(); ++i) {
        if (trim(stop_lines[i]).empty()) continue;
        auto fields = csv_split(stop_lines[i]);
        if (stop_id_col >= static_cast<int>(fields.size()))
            fail(ErrorKind::parse_error, "stops.txt line " + std::to_string(i + 1));
        std::string id = trim(fields[static_cast<size_t>(stop_id_col)]);
        if (id.empty()) fail(ErrorKind::parse_error, "stops.txt line " + std::to_string(i + 1) +
                                                         ": empty stop_id");
        if (stop_index.count(id))
            fail(ErrorKind::parse_error, "stops.txt: duplicate stop_id '" + id + "'");
        stop_index[id] = static_cast<VertexId>(names.size());
        names.push_back(id);
    }
    if (names.empty()) fail(ErrorKind::parse_error, stops_path + ": no stops");

    auto st_lines = read_lines(stop_times_path);
    if (st_lines.empty()) fail(ErrorKind::parse_error, stop_times_path + ": empty file");
    auto st_header = csv_split(st_lines[0]);
    int trip_col = find_column(st_header, "trip_id", "stop_times.txt");
    int stop_col = find_column(st_header, "stop_id", "stop_times.txt");
    int seq_col = find_column(st_header, "stop_sequence", "stop_times.txt");
    int dep_col = find_column(st_header, "departure_time", "stop_times.txt");

    struct Event {
        long long seq;
        VertexId stop;
        long long dep_seconds;
    };
    std::map<std::string, std::vector<Event>> trips;
    for (size_t i = 1; i < st_lines.size(); ++i) {
        if (trim(st_lines[i]).empty()) continue;
        auto fields = csv_split(st_lines[i]);
        auto field = [&](int col) -> std::string {
            if (col >= static_cast<int>(fields.size()))
                fail(ErrorKind::parse_error, "stop_times.txt line " + std::to_string(i + 1));
            return trim(fields[static_cast<size_t>(col)]);
        };
        std::string trip = field(trip_col);
        std::string stop = field(stop_col);
        long long seq = 0;
        if (!parse_int(field(seq_col), seq))
            fail(ErrorKind::parse_error,
                 "stop_times.txt line " + std::to_string(i + 1) + ": bad stop_sequence");
        auto it = stop_index.find(stop);
        if (it == stop_index.end())
            fail(ErrorKind::parse_error,
                 "stop_times.txt line " + std::to_string(i + 1) + ": unknown stop '" + stop +
                     "'");
        long long dep = parse_gtfs_time(field(dep_col));
        trips[trip].push_back(Event{seq, it->second, dep});
    }

    const Time nominal_horizon = static_cast<Time>(params.window_seconds / params.bin_seconds);
    std::map<std::pair<VertexId, VertexId>, std::set<Time>> merged;
    for (auto& [trip, events] : trips) {
        std::stable_sort(events.begin(), events.end(),
                         [](const Event& a, const Event& b) { return a.seq < b.seq; });
        for (size_t i = 0; i + 1 < events.size(); ++i) {
            const auto& from = events[i];
            const auto& to = events[i + 1];
            if (from.stop == to.stop) continue;
            if (from.dep_seconds > params.window_seconds) continue;
            Time t = static_cast<Time>((from.dep_seconds + params.bin_seconds - 1) /
                                       params.bin_seconds);
            t = std::max<Time>(1, std::min(t, nominal_horizon));
            merged[{from.stop, to.stop}].insert(t);
        }
    }
    if (merged.empty()) fail(ErrorKind::empty_window, "no departures inside the window");

    Time horizon = nominal_horizon;
    Time shift = 0;
    if (params.trim_horizon) {
        Time t_min = nominal_horizon, t_max = 1;
        for (const auto& [arc, times] : merged) {
            t_min = std::min(t_min, *times.begin());
            t_max = std::max(t_max, *times.rbegin());
        }
        shift = t_min - 1;
        horizon = t_max - shift;
    }

    std::vector<ArcSpec> arc_specs;
    arc_specs.reserve(merged.size());
    for (const auto& [arc, times] : merged) {
        ArcSpec spec;
        spec.from = arc.first;
        spec.to = arc.second;
        for (Time t : times) spec.times.push_back(t - shift);
        arc_specs.push_back(std::move(spec));
    }
    return TemporalGraph::build(std::move(names), arc_specs, horizon);
}

GtfsEndpoints select_endpoints_gtfs(const TemporalGraph& graph, const GtfsParams& params) {
    if (graph.vertex_count() < 2) fail(ErrorKind::no_feasible_pair, "graph too small");
    if (params.candidate_pool_growth < 1)
        fail(ErrorKind::bad_params, "candidate pool growth must be >= 1");
    if (params.source_percentile <= 0 || params.source_percentile > 1 ||
        params.target_percentile <= 0 || params.target_percentile > 1)
        fail(ErrorKind::bad_params, "percentiles must lie in (0, 1]");

    const Time T = graph.horizon();
    const Time src_cut = static_cast<Time>(std::ceil(params.source_percentile * T));
    const Time tgt_cut = static_cast<Time>(std::ceil(params.target_percentile * T));
    const VertexId n = graph.vertex_count();

    std::vector<VertexId> by_out(static_cast<size_t>(n)), by_in(static_cast<size_t>(n));
    for (VertexId v = 0; v < n; ++v) by_out[static_cast<size_t>(v)] = by_in[static_cast<size_t>(v)] = v;
    std::sort(by_out.begin(), by_out.end(), [&](VertexId a, VertexId b) {
        return std::make_pair(-graph.out_degree(a, 1, src_cut), a) <
               std::make_pair(-graph.out_degree(b, 1, src_cut), b);
    });
    std::sort(by_in.begin(), by_in.end(), [&](VertexId a, VertexId b) {
        return std::make_pair(-graph.in_degree(a, tgt_cut, T), a) <
               std::make_pair(-graph.in_degree(b, tgt_cut, T), b);
    });

    Instance probe{graph, 0, 1, T};
    for (int pool = params.candidate_pool_growth;; pool += params.candidate_pool_growth) {
        const int ns = std::min<int>(pool, n);
        const int nz = std::min<int>(pool, n);
        for (int i = 0; i < ns; ++i) {
            for (int j = 0; j < nz; ++j) {
                VertexId src = by_out[static_cast<size_t>(i)];
                VertexId dst = by_in[static_cast<size_t>(j)];
                if (src == dst) continue;
                probe.source = src;
                probe.target = dst;
                if (auto trt = min_traveling_time(probe)) {
                    Time deadline = static_cast<Time>(
                        std::min<long long>(2LL * *trt, static_cast<long long>(T)));
                    return GtfsEndpoints{src, dst, deadline};
                }
            }
        }
        if (ns == n && nz == n)
            fail(ErrorKind::no_feasible_pair, "no temporally connected (s, z) pair exists");
    }
}

}  // namespace tempsep
