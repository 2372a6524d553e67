#include "tempsep/solver.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "tempsep/pathfind.hpp"

namespace tempsep {

namespace {

// Direct temporal arcs s -> z form one-arc paths with no internal vertex;
// no row can ever cover them (trt = 1 <= d always).
void ensure_separable(const Instance& instance) {
    for (const auto& ta : instance.graph.out(instance.source))
        if (ta.to == instance.target)
            fail(ErrorKind::unseparable,
                 "direct temporal arc " + instance.graph.name_of(instance.source) + "->" +
                     instance.graph.name_of(instance.target) + "@" + std::to_string(ta.t));
}

MasterRow row_of(const Instance& instance, const TemporalPath& path) {
    MasterRow row;
    for (const auto& st : path.steps())
        if (st.from != instance.source && st.from != instance.target)
            row.push_back(MasterCell{st.from, st.t});
    return row;
}

Time extension_cost(const Interval& hull, Time t) {
    if (hull.is_empty()) return 1;
    if (t < hull.lo()) return hull.lo() - t;
    if (t > hull.hi()) return t - hull.hi();
    return 0;
}

Interval extend(const Interval& hull, Time t) {
    if (hull.is_empty()) return Interval::closed(t, t);
    return Interval::closed(std::min(hull.lo(), t), std::max(hull.hi(), t));
}

bool path_is_separated(const SeparatorTimeline& timeline, const TemporalPath& path) {
    for (const auto& st : path.steps())
        if (timeline.at(st.from).contains(st.t)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Branch-and-bound master backend.
// ---------------------------------------------------------------------------

struct BnbSearch {
    const MasterProblem& problem;
    Deadline deadline;

    // Dense cell encoding.
    std::vector<MasterCell> cells;
    std::vector<std::vector<int>> rows;          // row -> cell ids
    std::vector<std::vector<int>> rows_of_cell;  // cell id -> rows containing it
    std::vector<std::vector<std::pair<Time, int>>> vertex_cells;  // v -> (t, cell id) sorted
    std::vector<int> row_order;                  // rows by (size, index), for the bound

    // Search state.
    std::vector<Interval> hull;
    std::vector<char> covered;
    int uncovered = 0;
    long long cost = 0;
    int vcount = 0;

    // Incumbent: lexicographic (cost, vcount) minimum.
    bool found = false;
    bool bounded = false;  // an external incumbent_bound is active
    long long best_cost = 0;
    int best_vcount = 0;
    std::vector<Interval> best_hull;

    uint64_t nodes = 0;
    bool aborted = false;
    std::vector<int> lb_stamp;
    int lb_generation = 0;

    BnbSearch(const MasterProblem& p, std::optional<long long> incumbent_bound,
              const Deadline& dl)
        : problem(p), deadline(dl) {
        std::vector<MasterCell> all;
        for (const auto& row : p.rows())
            for (const auto& cell : row) all.push_back(cell);
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        cells = std::move(all);

        auto cell_id = [&](const MasterCell& c) {
            return static_cast<int>(std::lower_bound(cells.begin(), cells.end(), c) -
                                    cells.begin());
        };
        rows.resize(p.rows().size());
        rows_of_cell.resize(cells.size());
        vertex_cells.resize(static_cast<size_t>(p.num_vertices()));
        for (size_t r = 0; r < p.rows().size(); ++r) {
            for (const auto& cell : p.rows()[r]) {
                int id = cell_id(cell);
                rows[r].push_back(id);
                rows_of_cell[static_cast<size_t>(id)].push_back(static_cast<int>(r));
            }
        }
        for (size_t id = 0; id < cells.size(); ++id)
            vertex_cells[static_cast<size_t>(cells[id].v)].emplace_back(cells[id].t,
                                                                        static_cast<int>(id));
        for (auto& vc : vertex_cells) std::sort(vc.begin(), vc.end());

        row_order.resize(rows.size());
        for (size_t r = 0; r < rows.size(); ++r) row_order[r] = static_cast<int>(r);
        std::sort(row_order.begin(), row_order.end(), [&](int a, int b) {
            return std::make_pair(rows[static_cast<size_t>(a)].size(), a) <
                   std::make_pair(rows[static_cast<size_t>(b)].size(), b);
        });

        hull.assign(static_cast<size_t>(p.num_vertices()), Interval::empty());
        covered.assign(rows.size(), 0);
        uncovered = static_cast<int>(rows.size());
        lb_stamp.assign(cells.size(), 0);

        if (incumbent_bound) {
            bounded = true;
            best_cost = *incumbent_bound;
            best_vcount = -1;  // equal-cost solutions do not beat the external bound
        }
    }

    // Greedy family of pairwise cell-disjoint uncovered rows; each needs at
    // least one new blocked unit.
    int lower_bound() {
        ++lb_generation;
        int lb = 0;
        for (int r : row_order) {
            if (covered[static_cast<size_t>(r)]) continue;
            bool disjoint = true;
            for (int c : rows[static_cast<size_t>(r)])
                if (lb_stamp[static_cast<size_t>(c)] == lb_generation) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            ++lb;
            for (int c : rows[static_cast<size_t>(r)])
                lb_stamp[static_cast<size_t>(c)] = lb_generation;
        }
        return lb;
    }

    struct Undo {
        VertexId v;
        Interval old_hull;
        int old_vcount;
        std::vector<int> newly_covered;
    };

    Undo apply(const MasterCell& cell) {
        Undo undo;
        undo.v = cell.v;
        undo.old_hull = hull[static_cast<size_t>(cell.v)];
        undo.old_vcount = vcount;
        Interval next = extend(undo.old_hull, cell.t);
        cost += next.length() - undo.old_hull.length();
        if (undo.old_hull.is_empty()) ++vcount;
        for (const auto& [t, id] : vertex_cells[static_cast<size_t>(cell.v)]) {
            if (!next.contains(t) || undo.old_hull.contains(t)) continue;
            for (int r : rows_of_cell[static_cast<size_t>(id)]) {
                if (covered[static_cast<size_t>(r)]) continue;
                covered[static_cast<size_t>(r)] = 1;
                --uncovered;
                undo.newly_covered.push_back(r);
            }
        }
        hull[static_cast<size_t>(cell.v)] = next;
        return undo;
    }

    void revert(const Undo& undo) {
        cost -= hull[static_cast<size_t>(undo.v)].length() - undo.old_hull.length();
        vcount = undo.old_vcount;
        hull[static_cast<size_t>(undo.v)] = undo.old_hull;
        for (int r : undo.newly_covered) {
            covered[static_cast<size_t>(r)] = 0;
            ++uncovered;
        }
    }

    void dfs() {
        if (aborted) return;
        if ((++nodes & 1023u) == 0 && deadline.expired()) {
            aborted = true;
            return;
        }
        if (uncovered == 0) {
            bool better = (!found && !bounded) || cost < best_cost ||
                          (cost == best_cost && vcount < best_vcount);
            if (better) {
                found = true;
                best_cost = cost;
                best_vcount = vcount;
                best_hull = hull;
            }
            return;
        }
        if (found || bounded) {
            long long bound = cost + lower_bound();
            if (bound > best_cost) return;
            if (bound == best_cost && vcount >= best_vcount) return;
        }

        // Branch on a minimum-size uncovered row; small rows fail fast.
        int pick = -1;
        size_t pick_size = std::numeric_limits<size_t>::max();
        for (size_t r = 0; r < rows.size(); ++r) {
            if (covered[r]) continue;
            if (rows[r].size() < pick_size) {
                pick_size = rows[r].size();
                pick = static_cast<int>(r);
            }
        }

        std::vector<int> order = rows[static_cast<size_t>(pick)];
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const auto& ca = cells[static_cast<size_t>(a)];
            const auto& cb = cells[static_cast<size_t>(b)];
            Time ma = extension_cost(hull[static_cast<size_t>(ca.v)], ca.t);
            Time mb = extension_cost(hull[static_cast<size_t>(cb.v)], cb.t);
            return std::tie(ma, ca.v, ca.t) < std::tie(mb, cb.v, cb.t);
        });
        for (int id : order) {
            Undo undo = apply(cells[static_cast<size_t>(id)]);
            dfs();
            revert(undo);
            if (aborted) return;
        }
    }

    MasterSolution run() {
        MasterSolution result;
        if (rows.empty()) {
            result.hulls.assign(static_cast<size_t>(problem.num_vertices()), Interval::empty());
            result.cost = 0;
            result.found = true;
            result.proven_optimal = true;
            return result;
        }
        dfs();
        result.nodes = nodes;
        result.proven_optimal = !aborted;
        result.found = found;
        if (found) {
            result.hulls = best_hull;
            result.cost = best_cost;
        } else {
            result.hulls.assign(static_cast<size_t>(problem.num_vertices()), Interval::empty());
        }
        return result;
    }
};

class BnbBackend : public MasterBackend {
public:
    std::string name() const override { return "bnb"; }
    MasterSolution solve(const MasterProblem& problem,
                         std::optional<long long> incumbent_bound,
                         const Deadline& deadline) override {
        for (const auto& row : problem.rows())
            if (row.empty()) fail(ErrorKind::infeasible_master, "empty row");
        BnbSearch search(problem, incumbent_bound, deadline);
        return search.run();
    }
};

SeparatorTimeline materialize(const Instance& instance, const MasterSolution& solution) {
    SeparatorTimeline timeline(instance.graph.vertex_count());
    for (VertexId v = 0; v < instance.graph.vertex_count(); ++v)
        timeline.set(v, solution.hulls[static_cast<size_t>(v)]);
    return timeline;
}

// Repeatedly separate the next violating path with the cheapest single hull
// extension (ties by lowest (v, t)). Hulls only grow, so separated paths
// stay separated and the loop ends after finitely many rows.
void greedy_repair(const Instance& instance, SeparatorTimeline& timeline) {
    for (;;) {
        auto path = find_violating_path(instance, timeline);
        if (!path) return;
        bool have = false;
        Time best_cost = 0;
        MasterCell best{};
        for (const auto& st : path->steps()) {
            if (st.from == instance.source || st.from == instance.target) continue;
            Time c = extension_cost(timeline.at(st.from), st.t);
            if (!have || std::tie(c, st.from, st.t) < std::tie(best_cost, best.v, best.t)) {
                have = true;
                best_cost = c;
                best = MasterCell{st.from, st.t};
            }
        }
        if (!have) fail(ErrorKind::unseparable, "path with no internal vertex");
        timeline.set(best.v, extend(timeline.at(best.v), best.t));
    }
}

SolveReport make_report(const Instance& instance, SeparatorTimeline timeline,
                        uint64_t constraints, uint64_t nodes,
                        std::chrono::steady_clock::time_point t0, bool optimal,
                        bool timed_out) {
    // Post-solve assertion, always on: every report must carry a valid
    // separator (or the all-empty timeline of a path-free instance).
    if (!is_valid_separator(instance, timeline))
        throw std::logic_error("solver produced an invalid separator timeline");
    SolveReport report;
    report.length = timeline_length(timeline);
    report.separator_vertices = separator_vertex_count(timeline);
    report.avg_interval = report.separator_vertices == 0
                              ? 0.0
                              : static_cast<double>(report.length) /
                                    static_cast<double>(report.separator_vertices);
    report.timeline = std::move(timeline);
    report.generated_constraints = constraints;
    report.branch_nodes = nodes;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.optimal = optimal;
    report.timed_out = timed_out;
    return report;
}

}  // namespace

bool MasterProblem::add_row(MasterRow row) {
    if (row.empty()) fail(ErrorKind::infeasible_master, "empty constraint row");
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    for (const auto& cell : row) {
        if (cell.v < 0 || cell.v >= num_vertices_)
            fail(ErrorKind::unknown_vertex, "row cell vertex " + std::to_string(cell.v));
        if (cell.t < 1 || cell.t > horizon_)
            fail(ErrorKind::timestamp_out_of_range, "row cell time " + std::to_string(cell.t));
    }
    for (const auto& existing : rows_)
        if (existing == row) return false;
    rows_.push_back(std::move(row));
    return true;
}

std::unique_ptr<MasterBackend> make_master_backend(const std::string& name) {
    if (name == "bnb") return std::make_unique<BnbBackend>();
    fail(ErrorKind::bad_params, "unknown master backend '" + name + "'");
}

MasterSolution solve_master(const MasterProblem& problem,
                            std::optional<long long> incumbent_bound) {
    return make_master_backend("bnb")->solve(problem, incumbent_bound, Deadline());
}

SolveReport solve_exact(const Instance& instance, const SolverConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    if (config.batch_size < 1) fail(ErrorKind::bad_params, "batch_size must be >= 1");
    if (config.timeout_seconds <= 0) fail(ErrorKind::bad_params, "timeout must be positive");
    ensure_separable(instance);
    auto backend = make_master_backend(config.backend);
    Deadline deadline = Deadline::after_seconds(config.timeout_seconds);

    MasterProblem master(instance.graph.vertex_count(), instance.graph.horizon());
    SeparatorTimeline timeline(instance.graph.vertex_count());
    uint64_t nodes = 0;
    bool timed_out = false;
    bool optimal = false;

    for (;;) {
        if (deadline.expired()) {
            timed_out = true;
            break;
        }
        auto violations =
            find_violating_paths(instance, timeline, static_cast<size_t>(config.batch_size));
        if (violations.empty()) {
            // The master optimum over the generated rows is feasible for the
            // full problem, hence optimal for it.
            optimal = true;
            break;
        }
        bool first = true;
        for (const auto& path : violations) {
            MasterRow row = row_of(instance, path);
            if (row.empty()) fail(ErrorKind::unseparable, "path with no internal vertex");
            bool added = master.add_row(std::move(row));
            if (first && !added)
                throw std::logic_error("violating path produced an already-present row");
            first = false;
        }
        auto solution = backend->solve(master, std::nullopt, deadline);
        nodes += solution.nodes;
        if (!solution.proven_optimal || !solution.found) {
            if (solution.found) timeline = materialize(instance, solution);
            timed_out = true;
            break;
        }
        timeline = materialize(instance, solution);
    }

    if (timed_out) greedy_repair(instance, timeline);
    return make_report(instance, std::move(timeline),
                       static_cast<uint64_t>(master.rows().size()), nodes, t0, optimal,
                       timed_out);
}

SolveReport solve_greedy(const Instance& instance, const SolverConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    if (config.greedy_path_limit < 1) fail(ErrorKind::bad_params, "path_limit must be >= 1");
    ensure_separable(instance);

    auto enumeration = enumerate_paths(instance, config.greedy_path_limit);
    MasterProblem pool(instance.graph.vertex_count(), instance.graph.horizon());
    for (const auto& path : enumeration.paths) {
        MasterRow row = row_of(instance, path);
        if (row.empty()) fail(ErrorKind::unseparable, "path with no internal vertex");
        pool.add_row(std::move(row));
    }

    SeparatorTimeline timeline(instance.graph.vertex_count());
    const auto& rows = pool.rows();
    std::vector<char> covered(rows.size(), 0);
    size_t remaining = rows.size();
    while (remaining > 0) {
        // Unit of work: extend one vertex hull to reach timestamp t (or open
        // a new single-timestamp hull). Pick the move with the best newly
        // covered rows per unit of added length; ties by lowest (v, t).
        bool have = false;
        MasterCell best{};
        long long best_gain = 0;
        Time best_cost = 1;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (covered[r]) continue;
            for (const auto& cell : rows[r]) {
                Interval next = extend(timeline.at(cell.v), cell.t);
                Time move_cost = extension_cost(timeline.at(cell.v), cell.t);
                long long gain = 0;
                for (size_t q = 0; q < rows.size(); ++q) {
                    if (covered[q]) continue;
                    for (const auto& other : rows[q])
                        if (other.v == cell.v && next.contains(other.t)) {
                            ++gain;
                            break;
                        }
                }
                bool better;
                if (!have) {
                    better = true;
                } else {
                    auto lhs = gain * static_cast<long long>(best_cost);
                    auto rhs = best_gain * static_cast<long long>(move_cost);
                    better = lhs > rhs ||
                             (lhs == rhs &&
                              std::tie(cell.v, cell.t) < std::tie(best.v, best.t));
                }
                if (better) {
                    have = true;
                    best = cell;
                    best_gain = gain;
                    best_cost = move_cost;
                }
            }
        }
        if (!have) throw std::logic_error("greedy found no covering move");
        timeline.set(best.v, extend(timeline.at(best.v), best.t));
        remaining = 0;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (!covered[r]) {
                covered[r] = 1;
                bool hit = false;
                for (const auto& cell : rows[r])
                    if (timeline.at(cell.v).contains(cell.t)) {
                        hit = true;
                        break;
                    }
                if (!hit) {
                    covered[r] = 0;
                    ++remaining;
                }
            }
        }
    }

    // The pool may be truncated; repair against the true oracle.
    greedy_repair(instance, timeline);
    return make_report(instance, std::move(timeline), static_cast<uint64_t>(rows.size()), 0,
                       t0, /*optimal=*/false, /*timed_out=*/false);
}

SolveReport brute_force_min(const Instance& instance, const BruteForceLimits& limits) {
    auto t0 = std::chrono::steady_clock::now();
    if (instance.graph.vertex_count() > limits.max_vertices)
        fail(ErrorKind::limits_exceeded,
             "vertex count " + std::to_string(instance.graph.vertex_count()) + " > " +
                 std::to_string(limits.max_vertices));
    if (instance.graph.horizon() > limits.max_horizon)
        fail(ErrorKind::limits_exceeded, "horizon " + std::to_string(instance.graph.horizon()) +
                                             " > " + std::to_string(limits.max_horizon));
    ensure_separable(instance);

    const auto n = instance.graph.vertex_count();
    auto paths = enumerate_paths(instance).paths;
    if (paths.empty())
        return make_report(instance, SeparatorTimeline(n), 0, 0, t0, true, false);

    // Interval candidates per vertex: Empty, plus [a, b] over the vertex's
    // outgoing step times on the enumerated paths.
    std::vector<std::vector<Time>> step_times(static_cast<size_t>(n));
    for (const auto& path : paths)
        for (const auto& st : path.steps())
            if (st.from != instance.source && st.from != instance.target)
                step_times[static_cast<size_t>(st.from)].push_back(st.t);
    std::vector<std::vector<Interval>> candidates(static_cast<size_t>(n));
    for (VertexId v = 0; v < n; ++v) {
        auto& times = step_times[static_cast<size_t>(v)];
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());
        auto& cand = candidates[static_cast<size_t>(v)];
        cand.push_back(Interval::empty());
        for (size_t i = 0; i < times.size(); ++i)
            for (size_t j = i; j < times.size(); ++j)
                cand.push_back(Interval::closed(times[i], times[j]));
        std::sort(cand.begin(), cand.end(), [](const Interval& a, const Interval& b) {
            return std::make_pair(a.length(), a.lo()) < std::make_pair(b.length(), b.lo());
        });
    }

    // Vertices with real choices, mixed-radix enumeration over them.
    std::vector<VertexId> active;
    double space = 1.0;
    for (VertexId v = 0; v < n; ++v)
        if (candidates[static_cast<size_t>(v)].size() > 1) {
            active.push_back(v);
            space *= static_cast<double>(candidates[static_cast<size_t>(v)].size());
        }
    constexpr double kMaxAssignments = 2e7;
    if (space > kMaxAssignments)
        fail(ErrorKind::limits_exceeded, "assignment space too large for exhaustion");

    struct Entry {
        long long length;
        uint64_t rank;
    };
    std::vector<Entry> order;
    order.reserve(static_cast<size_t>(space));
    std::vector<size_t> odo(active.size(), 0);
    for (;;) {
        long long total = 0;
        uint64_t rank = 0;
        for (size_t i = 0; i < active.size(); ++i) {
            const auto& cand = candidates[static_cast<size_t>(active[i])];
            total += cand[odo[i]].length();
            rank = rank * cand.size() + odo[i];
        }
        order.push_back(Entry{total, rank});
        bool done = active.empty();
        size_t pos = active.size();
        while (pos > 0) {
            --pos;
            if (++odo[pos] < candidates[static_cast<size_t>(active[pos])].size()) break;
            odo[pos] = 0;
            if (pos == 0) done = true;
        }
        if (done) break;
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const Entry& a, const Entry& b) { return a.length < b.length; });

    uint64_t checked = 0;
    for (const auto& entry : order) {
        ++checked;
        SeparatorTimeline timeline(n);
        uint64_t rank = entry.rank;
        for (size_t i = active.size(); i-- > 0;) {
            const auto& cand = candidates[static_cast<size_t>(active[i])];
            timeline.set(active[i], cand[rank % cand.size()]);
            rank /= cand.size();
        }
        bool valid = true;
        for (const auto& path : paths)
            if (!path_is_separated(timeline, path)) {
                valid = false;
                break;
            }
        if (valid)
            return make_report(instance, std::move(timeline), 0, checked, t0, true, false);
    }
    throw std::logic_error("exhaustive search found no separator");  // full block always works
}

}  // namespace tempsep
