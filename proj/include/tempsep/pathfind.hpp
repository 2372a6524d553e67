#ifndef TEMPSEP_PATHFIND_HPP
#define TEMPSEP_PATHFIND_HPP

#include <functional>
#include <optional>

#include <gmpxx.h>

#include "tempsep/core.hpp"

/*
 * Deadline-bounded temporal path search over an instance (graph, s, z, d).
 *
 * A path is d-feasible when its traveling time is at most d (inclusive).
 * find_violating_path is the separation oracle of the lazy constraint loop:
 * given a candidate timeline it either produces an unseparated d-feasible
 * s-z path or certifies that none exists.
 */

namespace tempsep {

// Blocking predicate derived from an instance and a candidate timeline:
// blocked(v, t) iff v is internal (not s, not z) and t lies in I_v.
class BlockedView {
public:
    BlockedView(const Instance& instance, const SeparatorTimeline& timeline)
        : instance_(&instance), timeline_(&timeline) {}

    bool blocked(VertexId v, Time t) const {
        if (v == instance_->source || v == instance_->target) return false;
        return timeline_->at(v).contains(t);
    }

private:
    const Instance* instance_;
    const SeparatorTimeline* timeline_;
};

// Path or walk count. `exact` distinguishes a simple-path count from the
// walk-count upper bound; `complete` is false when a budget stopped an
// exact count early (the value is then a partial count).
struct PathCount {
    mpz_class value = 0;
    bool exact = true;
    bool complete = true;
};

// Returns an s-z path with trt <= d in which no internal vertex's outgoing
// step is blocked, or nullopt when the timeline is a valid s,z,d-separator.
//
// Per outgoing temporal arc (s -> u, t1) in (t1, u) order, a time-respecting
// reachability sweep runs over times [t1+1, t1+d-1], skipping blocked steps;
// the earliest-arrival predecessor tree makes the reconstructed path simple
// (arrival times strictly decrease along predecessor links, so no vertex can
// repeat). Polynomial in the number of temporal arcs.
std::optional<TemporalPath> find_violating_path(const Instance& instance,
                                                const SeparatorTimeline& timeline);

// Batch form: up to `max_count` violating paths, at most one per outgoing
// temporal arc of s, in the same deterministic order. Used by the lazy
// constraint loop when it wants several cuts per master solve.
std::vector<TemporalPath> find_violating_paths(const Instance& instance,
                                               const SeparatorTimeline& timeline,
                                               size_t max_count);

// True iff find_violating_path comes back empty.
bool is_valid_separator(const Instance& instance, const SeparatorTimeline& timeline);

struct PathEnumeration {
    std::vector<TemporalPath> paths;
    bool limit_hit = false;  // stream was truncated at `limit`
};

// Every d-feasible simple temporal s-z path exactly once, depth-first over
// (vertex, time) with on-path marking and deadline pruning; deterministic
// order (children by target-vertex id, then time). Stops early at `limit`.
PathEnumeration enumerate_paths(const Instance& instance,
                                std::optional<size_t> limit = std::nullopt);

// Streaming form: visitor returns false to stop early.
void for_each_path(const Instance& instance,
                   const std::function<bool(const TemporalPath&)>& visit);

// Number of strictly-increasing temporal s-z walks with trt <= d, by dynamic
// programming per start time over the time-expanded acyclic graph. Always an
// upper bound on the simple-path count.
PathCount count_walks(const Instance& instance);

// Exact d-feasible simple-path count via the enumeration DFS. `budget` caps
// visited search-tree nodes; when it runs out the result carries the partial
// count with complete=false.
PathCount count_paths_exact(const Instance& instance, size_t budget);

// Minimum traveling time over all temporal s-z paths, deadline ignored;
// nullopt when z is unreachable.
std::optional<Time> min_traveling_time(const Instance& instance);

}  // namespace tempsep

#endif
