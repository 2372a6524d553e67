#include "tempsep/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace tempsep {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::timestamp_out_of_range: return "timestamp out of range";
        case ErrorKind::self_loop: return "self loop";
        case ErrorKind::unknown_vertex: return "unknown vertex";
        case ErrorKind::empty_timestamp_set: return "empty timestamp set";
        case ErrorKind::bad_interval: return "bad interval";
        case ErrorKind::bad_timeline: return "bad timeline";
        case ErrorKind::bad_instance: return "bad instance";
        case ErrorKind::unseparable: return "unseparable";
        case ErrorKind::infeasible_master: return "infeasible master problem";
        case ErrorKind::limits_exceeded: return "limits exceeded";
        case ErrorKind::invalid_set_cover: return "invalid set cover instance";
        case ErrorKind::not_a_cover: return "not a cover";
        case ErrorKind::not_a_separator: return "not a separator";
        case ErrorKind::uncoverable: return "uncoverable";
        case ErrorKind::parse_error: return "parse error";
        case ErrorKind::inconsistent_header: return "inconsistent header";
        case ErrorKind::missing_file: return "missing file";
        case ErrorKind::malformed_time: return "malformed time";
        case ErrorKind::empty_window: return "empty window";
        case ErrorKind::no_path: return "no path";
        case ErrorKind::degenerate_endpoints: return "degenerate endpoints";
        case ErrorKind::no_feasible_pair: return "no feasible pair";
        case ErrorKind::bad_params: return "bad params";
    }
    return "error";
}

TemporalGraph TemporalGraph::build(std::vector<std::string> vertex_names,
                                   const std::vector<ArcSpec>& arc_specs, Time horizon) {
    if (horizon < 1) fail(ErrorKind::bad_params, "horizon must be >= 1");
    if (vertex_names.empty()) fail(ErrorKind::bad_params, "need at least one vertex");
    {
        std::unordered_set<std::string> seen;
        for (const auto& name : vertex_names) {
            if (!seen.insert(name).second)
                fail(ErrorKind::bad_params, "duplicate vertex name '" + name + "'");
        }
    }

    const auto n = static_cast<VertexId>(vertex_names.size());
    std::map<std::pair<VertexId, VertexId>, std::set<Time>> merged;
    for (const auto& spec : arc_specs) {
        if (spec.from < 0 || spec.from >= n || spec.to < 0 || spec.to >= n)
            fail(ErrorKind::unknown_vertex,
                 "arc (" + std::to_string(spec.from) + "," + std::to_string(spec.to) + ")");
        if (spec.from == spec.to)
            fail(ErrorKind::self_loop, "arc at vertex " + vertex_names[spec.from]);
        if (spec.times.empty())
            fail(ErrorKind::empty_timestamp_set,
                 "arc " + vertex_names[spec.from] + "->" + vertex_names[spec.to]);
        auto& times = merged[{spec.from, spec.to}];
        for (Time t : spec.times) {
            if (t < 1 || t > horizon)
                fail(ErrorKind::timestamp_out_of_range,
                     "t=" + std::to_string(t) + " on arc " + vertex_names[spec.from] + "->" +
                         vertex_names[spec.to] + " with T=" + std::to_string(horizon));
            times.insert(t);
        }
    }

    TemporalGraph g;
    g.names_ = std::move(vertex_names);
    g.horizon_ = horizon;
    g.out_.resize(static_cast<size_t>(n));
    g.in_.resize(static_cast<size_t>(n));
    g.arcs_.reserve(merged.size());
    for (const auto& [key, times] : merged) {
        ArcSpec rec;
        rec.from = key.first;
        rec.to = key.second;
        rec.times.assign(times.begin(), times.end());
        for (Time t : rec.times) {
            TemporalArc ta{rec.from, rec.to, t};
            g.out_[static_cast<size_t>(rec.from)].push_back(ta);
            g.in_[static_cast<size_t>(rec.to)].push_back(ta);
            g.all_sorted_by_time_.push_back(ta);
        }
        g.arcs_.push_back(std::move(rec));
    }
    // arcs_ is already sorted by (from, to) via the map; fix the index orders.
    for (auto& lst : g.out_)
        std::sort(lst.begin(), lst.end(), [](const TemporalArc& a, const TemporalArc& b) {
            return std::tie(a.to, a.t) < std::tie(b.to, b.t);
        });
    for (auto& lst : g.in_)
        std::sort(lst.begin(), lst.end(), [](const TemporalArc& a, const TemporalArc& b) {
            return std::tie(a.from, a.t) < std::tie(b.from, b.t);
        });
    std::sort(g.all_sorted_by_time_.begin(), g.all_sorted_by_time_.end(),
              [](const TemporalArc& a, const TemporalArc& b) {
                  return std::tie(a.t, a.from, a.to) < std::tie(b.t, b.from, b.to);
              });
    return g;
}

std::optional<VertexId> TemporalGraph::find_vertex(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<VertexId>(i);
    return std::nullopt;
}

bool TemporalGraph::has_temporal_arc(VertexId from, VertexId to, Time t) const {
    if (from < 0 || from >= vertex_count()) return false;
    for (const auto& ta : out(from))
        if (ta.to == to && ta.t == t) return true;
    return false;
}

int TemporalGraph::out_degree(VertexId v, Time t_min, Time t_max) const {
    if (t_max == 0) t_max = horizon_;
    int deg = 0;
    for (const auto& ta : out(v))
        if (ta.t >= t_min && ta.t <= t_max) ++deg;
    return deg;
}

int TemporalGraph::in_degree(VertexId v, Time t_min, Time t_max) const {
    if (t_max == 0) t_max = horizon_;
    int deg = 0;
    for (const auto& ta : in_[static_cast<size_t>(v)])
        if (ta.t >= t_min && ta.t <= t_max) ++deg;
    return deg;
}

TemporalPath::TemporalPath(const TemporalGraph& graph, std::vector<PathStep> steps)
    : steps_(std::move(steps)) {
    if (steps_.empty()) fail(ErrorKind::bad_instance, "temporal path must be non-empty");
    std::unordered_set<VertexId> visited;
    visited.insert(steps_.front().from);
    for (size_t i = 0; i < steps_.size(); ++i) {
        const auto& st = steps_[i];
        if (i > 0) {
            if (steps_[i - 1].to != st.from)
                fail(ErrorKind::bad_instance, "path steps do not chain");
            if (steps_[i - 1].t >= st.t)
                fail(ErrorKind::bad_instance, "path times must strictly increase");
        }
        if (!visited.insert(st.to).second)
            fail(ErrorKind::bad_instance,
                 "path revisits vertex " + graph.name_of(st.to));
        if (!graph.has_temporal_arc(st.from, st.to, st.t))
            fail(ErrorKind::bad_instance,
                 "temporal arc " + graph.name_of(st.from) + "->" + graph.name_of(st.to) +
                     "@" + std::to_string(st.t) + " not in graph");
    }
}

Time traveling_time(const TemporalPath& path) {
    return path.last_time() - path.first_time() + 1;
}

long long timeline_length(const SeparatorTimeline& timeline) {
    long long total = 0;
    for (const auto& iv : timeline.intervals()) total += iv.length();
    return total;
}

int separator_vertex_count(const SeparatorTimeline& timeline) {
    int count = 0;
    for (const auto& iv : timeline.intervals())
        if (!iv.is_empty()) ++count;
    return count;
}

bool separates(VertexId vertex, const Interval& interval, const TemporalPath& path) {
    if (interval.is_empty()) return false;
    for (const auto& st : path.steps())
        if (st.from == vertex && interval.contains(st.t)) return true;
    return false;
}

Instance Instance::make(TemporalGraph graph, VertexId source, VertexId target, Time deadline) {
    if (source < 0 || source >= graph.vertex_count())
        fail(ErrorKind::unknown_vertex, "source " + std::to_string(source));
    if (target < 0 || target >= graph.vertex_count())
        fail(ErrorKind::unknown_vertex, "target " + std::to_string(target));
    if (source == target) fail(ErrorKind::bad_instance, "source equals target");
    if (deadline < 1 || deadline > graph.horizon())
        fail(ErrorKind::bad_instance, "deadline must lie in [1, T]");
    return Instance{std::move(graph), source, target, deadline};
}

void validate_timeline(const Instance& instance, const SeparatorTimeline& timeline) {
    if (timeline.vertex_count() != instance.graph.vertex_count())
        fail(ErrorKind::bad_timeline, "timeline must cover every vertex exactly once");
    for (VertexId v = 0; v < timeline.vertex_count(); ++v) {
        const auto& iv = timeline.at(v);
        if (iv.is_empty()) continue;
        if (iv.lo() < 1 || iv.hi() > instance.graph.horizon())
            fail(ErrorKind::bad_timeline,
                 "interval of " + instance.graph.name_of(v) + " outside [1, T]");
        if (v == instance.source || v == instance.target)
            fail(ErrorKind::bad_timeline,
                 "source/target vertex " + instance.graph.name_of(v) +
                     " must have an empty interval");
    }
}

}  // namespace tempsep
