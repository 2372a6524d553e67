#include "tempsep/pathfind.hpp"

#include <algorithm>
#include <limits>

namespace tempsep {

namespace {

constexpr Time kInf = std::numeric_limits<Time>::max();

// First index in the time-sorted temporal arc list with arc.t > t.
size_t first_after(const std::vector<TemporalArc>& arcs, Time t) {
    return static_cast<size_t>(std::lower_bound(arcs.begin(), arcs.end(), t + 1,
                                                [](const TemporalArc& a, Time v) {
                                                    return a.t < v;
                                                }) -
                               arcs.begin());
}

// Earliest-arrival sweep from a single seeded start arc (s -> u, t1),
// restricted to subsequent times in (t1, t_max]. Returns the reconstructed
// path if z is reached. Arrival times strictly decrease along predecessor
// links, so the reconstruction cannot revisit a vertex.
std::optional<TemporalPath> sweep_from(const Instance& instance, const BlockedView& blocked,
                                       const TemporalArc& start, Time t_max) {
    const auto& g = instance.graph;
    if (start.to == instance.target)
        return TemporalPath(g, {PathStep{start.from, start.to, start.t}});

    std::vector<Time> arrival(static_cast<size_t>(g.vertex_count()), kInf);
    std::vector<TemporalArc> pred(static_cast<size_t>(g.vertex_count()));
    arrival[static_cast<size_t>(start.to)] = start.t;
    pred[static_cast<size_t>(start.to)] = start;

    const auto& arcs = g.temporal_arcs_by_time();
    for (size_t i = first_after(arcs, start.t); i < arcs.size() && arcs[i].t <= t_max; ++i) {
        const auto& ta = arcs[i];
        if (ta.from == instance.target || ta.to == instance.source) continue;
        if (arrival[static_cast<size_t>(ta.from)] >= ta.t) continue;
        if (arrival[static_cast<size_t>(ta.to)] <= ta.t) continue;
        if (blocked.blocked(ta.from, ta.t)) continue;
        arrival[static_cast<size_t>(ta.to)] = ta.t;
        pred[static_cast<size_t>(ta.to)] = ta;
    }

    if (arrival[static_cast<size_t>(instance.target)] == kInf) return std::nullopt;
    std::vector<PathStep> steps;
    for (VertexId cur = instance.target; cur != instance.source;) {
        const auto& ta = pred[static_cast<size_t>(cur)];
        steps.push_back(PathStep{ta.from, ta.to, ta.t});
        cur = ta.from;
    }
    std::reverse(steps.begin(), steps.end());
    return TemporalPath(g, std::move(steps));
}

struct DfsDriver {
    const Instance& instance;
    const std::function<bool(const std::vector<PathStep>&)>& emit;
    size_t budget;        // max search-tree nodes
    size_t nodes = 0;
    bool budget_hit = false;
    bool stopped = false;  // visitor asked to stop
    std::vector<bool> on_path{};
    std::vector<PathStep> steps{};
    Time window_end = 0;

    bool tick() {
        if (++nodes > budget) {
            budget_hit = true;
            return false;
        }
        return true;
    }

    void expand(VertexId v, Time last_t) {
        for (const auto& ta : instance.graph.out(v)) {
            if (stopped || budget_hit) return;
            if (ta.t <= last_t || ta.t > window_end) continue;
            if (on_path[static_cast<size_t>(ta.to)]) continue;
            if (!tick()) return;
            steps.push_back(PathStep{ta.from, ta.to, ta.t});
            if (ta.to == instance.target) {
                if (!emit(steps)) stopped = true;
            } else {
                on_path[static_cast<size_t>(ta.to)] = true;
                expand(ta.to, ta.t);
                on_path[static_cast<size_t>(ta.to)] = false;
            }
            steps.pop_back();
        }
    }

    void run() {
        on_path.assign(static_cast<size_t>(instance.graph.vertex_count()), false);
        on_path[static_cast<size_t>(instance.source)] = true;
        if (!tick()) return;  // root
        for (const auto& ta : instance.graph.out(instance.source)) {
            if (stopped || budget_hit) return;
            window_end = std::min<long long>(ta.t + instance.deadline - 1,
                                             instance.graph.horizon());
            if (!tick()) return;
            steps.push_back(PathStep{ta.from, ta.to, ta.t});
            if (ta.to == instance.target) {
                if (!emit(steps)) stopped = true;
            } else {
                on_path[static_cast<size_t>(ta.to)] = true;
                expand(ta.to, ta.t);
                on_path[static_cast<size_t>(ta.to)] = false;
            }
            steps.pop_back();
        }
    }
};

}  // namespace

std::vector<TemporalPath> find_violating_paths(const Instance& instance,
                                               const SeparatorTimeline& timeline,
                                               size_t max_count) {
    validate_timeline(instance, timeline);
    BlockedView blocked(instance, timeline);

    // Start arcs in (t1, first-hop target) order for reproducible traces.
    auto starts = instance.graph.out(instance.source);
    std::sort(starts.begin(), starts.end(), [](const TemporalArc& a, const TemporalArc& b) {
        return std::tie(a.t, a.to) < std::tie(b.t, b.to);
    });
    std::vector<TemporalPath> found;
    for (const auto& start : starts) {
        if (found.size() >= max_count) break;
        Time t_max = static_cast<Time>(
            std::min<long long>(static_cast<long long>(start.t) + instance.deadline - 1,
                                instance.graph.horizon()));
        if (auto path = sweep_from(instance, blocked, start, t_max))
            found.push_back(std::move(*path));
    }
    return found;
}

std::optional<TemporalPath> find_violating_path(const Instance& instance,
                                                const SeparatorTimeline& timeline) {
    auto found = find_violating_paths(instance, timeline, 1);
    if (found.empty()) return std::nullopt;
    return std::move(found.front());
}

bool is_valid_separator(const Instance& instance, const SeparatorTimeline& timeline) {
    return !find_violating_path(instance, timeline).has_value();
}

void for_each_path(const Instance& instance,
                   const std::function<bool(const TemporalPath&)>& visit) {
    std::function<bool(const std::vector<PathStep>&)> emit =
        [&](const std::vector<PathStep>& steps) {
            return visit(TemporalPath(instance.graph, steps));
        };
    DfsDriver driver{instance, emit, std::numeric_limits<size_t>::max()};
    driver.run();
}

PathEnumeration enumerate_paths(const Instance& instance, std::optional<size_t> limit) {
    if (limit && *limit < 1) fail(ErrorKind::bad_params, "limit must be >= 1");
    PathEnumeration result;
    for_each_path(instance, [&](const TemporalPath& path) {
        if (limit && result.paths.size() == *limit) {
            result.limit_hit = true;
            return false;
        }
        result.paths.push_back(path);
        return true;
    });
    return result;
}

PathCount count_walks(const Instance& instance) {
    const auto& g = instance.graph;
    const auto& arcs = g.temporal_arcs_by_time();
    const auto n = static_cast<size_t>(g.vertex_count());

    std::vector<Time> start_times;
    for (const auto& ta : g.out(instance.source)) start_times.push_back(ta.t);
    std::sort(start_times.begin(), start_times.end());
    start_times.erase(std::unique(start_times.begin(), start_times.end()), start_times.end());

    PathCount result;
    result.exact = false;
    std::vector<mpz_class> acc(n);
    for (Time t1 : start_times) {
        for (auto& v : acc) v = 0;
        Time t_max = static_cast<Time>(
            std::min<long long>(static_cast<long long>(t1) + instance.deadline - 1, g.horizon()));
        size_t i = first_after(arcs, t1 - 1);  // arcs with t >= t1
        std::vector<mpz_class> group_f;
        std::vector<size_t> group_idx;
        while (i < arcs.size() && arcs[i].t <= t_max) {
            Time t = arcs[i].t;
            group_f.clear();
            group_idx.clear();
            for (; i < arcs.size() && arcs[i].t == t; ++i) {
                const auto& ta = arcs[i];
                mpz_class ways = acc[static_cast<size_t>(ta.from)];
                if (ta.from == instance.source && t == t1) ways += 1;
                group_f.push_back(std::move(ways));
                group_idx.push_back(i);
            }
            for (size_t k = 0; k < group_idx.size(); ++k) {
                const auto& ta = arcs[group_idx[k]];
                if (group_f[k] == 0) continue;
                acc[static_cast<size_t>(ta.to)] += group_f[k];
                if (ta.to == instance.target) result.value += group_f[k];
            }
        }
    }
    return result;
}

PathCount count_paths_exact(const Instance& instance, size_t budget) {
    if (budget < 1) fail(ErrorKind::bad_params, "budget must be >= 1");
    PathCount result;
    result.exact = true;
    std::function<bool(const std::vector<PathStep>&)> emit =
        [&](const std::vector<PathStep>&) {
            result.value += 1;
            return true;
        };
    DfsDriver driver{instance, emit, budget};
    driver.run();
    result.complete = !driver.budget_hit;
    return result;
}

std::optional<Time> min_traveling_time(const Instance& instance) {
    const auto& g = instance.graph;
    const auto& arcs = g.temporal_arcs_by_time();
    const auto n = static_cast<size_t>(g.vertex_count());

    std::vector<Time> start_times;
    for (const auto& ta : g.out(instance.source)) {
        if (ta.to == instance.target) return 1;  // single temporal arc
        start_times.push_back(ta.t);
    }
    std::sort(start_times.begin(), start_times.end());
    start_times.erase(std::unique(start_times.begin(), start_times.end()), start_times.end());

    std::optional<Time> best;
    std::vector<Time> arrival(n);
    for (Time t1 : start_times) {
        std::fill(arrival.begin(), arrival.end(), kInf);
        for (const auto& ta : g.out(instance.source))
            if (ta.t == t1) arrival[static_cast<size_t>(ta.to)] = t1;
        for (size_t i = first_after(arcs, t1); i < arcs.size(); ++i) {
            const auto& ta = arcs[i];
            if (ta.from == instance.target || ta.to == instance.source) continue;
            if (arrival[static_cast<size_t>(ta.from)] >= ta.t) continue;
            if (arrival[static_cast<size_t>(ta.to)] <= ta.t) continue;
            arrival[static_cast<size_t>(ta.to)] = ta.t;
        }
        Time az = arrival[static_cast<size_t>(instance.target)];
        if (az != kInf) {
            Time trt = az - t1 + 1;
            if (!best || trt < *best) best = trt;
        }
    }
    return best;
}

}  // namespace tempsep
