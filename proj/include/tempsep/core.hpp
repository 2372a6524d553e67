#ifndef TEMPSEP_CORE_HPP
#define TEMPSEP_CORE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tempsep/errors.hpp"

/*
 * Temporal graph data model.
 *
 * A temporal directed graph is a directed graph whose arcs carry sets of
 * integer timestamps in [1, T]; the pair (arc, timestamp) is a temporal arc
 * and represents one traversal opportunity. Timestamp 0 is reserved as a
 * sentinel and never stored.
 *
 * All types here are immutable after construction and safe to share across
 * threads.
 */

namespace tempsep {

using VertexId = int32_t;
using Time = int32_t;

struct ArcSpec {
    VertexId from = 0;
    VertexId to = 0;
    std::vector<Time> times;
};

// One temporal arc, flattened.
struct TemporalArc {
    VertexId from = 0;
    VertexId to = 0;
    Time t = 0;
};

class TemporalGraph {
public:
    TemporalGraph() = default;

    // Validating factory. Arc records are merged per ordered (u,v) pair,
    // timestamps sorted and deduplicated. Rejects self-loops, unknown
    // vertices, empty timestamp sets and timestamps outside [1, T].
    static TemporalGraph build(std::vector<std::string> vertex_names,
                               const std::vector<ArcSpec>& arc_specs, Time horizon);

    VertexId vertex_count() const { return static_cast<VertexId>(names_.size()); }
    Time horizon() const { return horizon_; }
    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& name_of(VertexId v) const { return names_[static_cast<size_t>(v)]; }
    std::optional<VertexId> find_vertex(const std::string& name) const;

    // Merged arc records, sorted by (from, to); times sorted ascending.
    const std::vector<ArcSpec>& arcs() const { return arcs_; }
    size_t temporal_arc_count() const { return all_sorted_by_time_.size(); }

    // Outgoing temporal arcs of v, sorted by (to, t). Drives the
    // deterministic DFS orders.
    const std::vector<TemporalArc>& out(VertexId v) const {
        return out_[static_cast<size_t>(v)];
    }

    // Every temporal arc, sorted by (t, from, to). Drives the time sweeps.
    const std::vector<TemporalArc>& temporal_arcs_by_time() const {
        return all_sorted_by_time_;
    }

    bool has_temporal_arc(VertexId from, VertexId to, Time t) const;

    // Degree over temporal arcs, optionally restricted to a time range.
    int out_degree(VertexId v, Time t_min = 1, Time t_max = 0) const;
    int in_degree(VertexId v, Time t_min = 1, Time t_max = 0) const;

private:
    std::vector<std::string> names_;
    std::vector<ArcSpec> arcs_;
    std::vector<std::vector<TemporalArc>> out_;
    std::vector<std::vector<TemporalArc>> in_;
    std::vector<TemporalArc> all_sorted_by_time_;
    Time horizon_ = 1;
};

// One step of a temporal path: the traversal of (from -> to) at time t.
struct PathStep {
    VertexId from = 0;
    VertexId to = 0;
    Time t = 0;

    bool operator==(const PathStep&) const = default;
};

// A strict temporal path: consecutive steps chain, times strictly increase,
// visited vertices are pairwise distinct, and every step exists in the host
// graph. The validating constructor is the only way to build one.
class TemporalPath {
public:
    TemporalPath(const TemporalGraph& graph, std::vector<PathStep> steps);

    const std::vector<PathStep>& steps() const { return steps_; }
    VertexId source() const { return steps_.front().from; }
    VertexId target() const { return steps_.back().to; }
    Time first_time() const { return steps_.front().t; }
    Time last_time() const { return steps_.back().t; }

    bool operator==(const TemporalPath& other) const { return steps_ == other.steps_; }

private:
    std::vector<PathStep> steps_;
};

// Traveling time: last step time - first step time + 1.
Time traveling_time(const TemporalPath& path);

// Per-vertex blocking interval: Empty, or [lo, hi] with 1 <= lo <= hi <= T.
class Interval {
public:
    constexpr Interval() = default;  // empty

    static Interval closed(Time lo, Time hi) {
        if (lo < 1 || lo > hi) fail(ErrorKind::bad_interval, "require 1 <= lo <= hi");
        Interval iv;
        iv.lo_ = lo;
        iv.hi_ = hi;
        return iv;
    }
    static constexpr Interval empty() { return Interval{}; }

    bool is_empty() const { return lo_ > hi_; }
    Time lo() const { return lo_; }
    Time hi() const { return hi_; }
    Time length() const { return is_empty() ? 0 : hi_ - lo_ + 1; }
    bool contains(Time t) const { return lo_ <= t && t <= hi_; }

    bool operator==(const Interval&) const = default;

private:
    Time lo_ = 1;
    Time hi_ = 0;
};

// A separator timeline assigns one (possibly empty) interval to every
// vertex of the host graph.
class SeparatorTimeline {
public:
    SeparatorTimeline() = default;
    explicit SeparatorTimeline(VertexId vertex_count)
        : intervals_(static_cast<size_t>(vertex_count)) {}

    VertexId vertex_count() const { return static_cast<VertexId>(intervals_.size()); }
    const Interval& at(VertexId v) const { return intervals_[static_cast<size_t>(v)]; }
    void set(VertexId v, Interval iv) { intervals_[static_cast<size_t>(v)] = iv; }
    const std::vector<Interval>& intervals() const { return intervals_; }

    bool operator==(const SeparatorTimeline&) const = default;

private:
    std::vector<Interval> intervals_;
};

// Sum of interval lengths over all vertices.
long long timeline_length(const SeparatorTimeline& timeline);

// Number of vertices with a non-empty interval.
int separator_vertex_count(const SeparatorTimeline& timeline);

// True iff the path traverses an outgoing temporal arc (v -> u, t) with
// t in the interval. An empty interval separates nothing; arcs arriving
// at v are irrelevant.
bool separates(VertexId vertex, const Interval& interval, const TemporalPath& path);

// A problem instance: graph, source, target, deadline.
struct Instance {
    TemporalGraph graph;
    VertexId source = 0;
    VertexId target = 0;
    Time deadline = 1;

    static Instance make(TemporalGraph graph, VertexId source, VertexId target, Time deadline);
};

// Shape check for a timeline against an instance: one interval per vertex,
// bounds within [1, T], source and target empty. Throws on violation.
void validate_timeline(const Instance& instance, const SeparatorTimeline& timeline);

}  // namespace tempsep

#endif
