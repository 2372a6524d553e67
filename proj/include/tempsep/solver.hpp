#ifndef TEMPSEP_SOLVER_HPP
#define TEMPSEP_SOLVER_HPP

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tempsep/core.hpp"

/*
 * Minimum-length separator timelines via lazy constraint generation.
 *
 * The master problem selects binary decisions x_{v,t} (timestamp t blocked
 * at vertex v) of minimum total count, hitting every generated path row,
 * subject to per-vertex contiguity. Contiguity is enforced structurally:
 * the branch-and-bound state keeps one interval hull per vertex and charges
 * its full width, which coincides with the pairwise integer inequalities
 * x_{v,t1} + x_{v,t2} - 1 <= x_{v,t1+1} on feasible integer points.
 *
 * The outer loop alternates master solves with the separation oracle
 * (find_violating_path) until the master's optimum is a valid separator;
 * at that point it is optimal for the full problem, because the master
 * optimizes over a subset of all path rows.
 */

namespace tempsep {

struct MasterCell {
    VertexId v = 0;
    Time t = 0;

    auto operator<=>(const MasterCell&) const = default;
};

using MasterRow = std::vector<MasterCell>;

class MasterProblem {
public:
    MasterProblem(VertexId num_vertices, Time horizon)
        : num_vertices_(num_vertices), horizon_(horizon) {}

    VertexId num_vertices() const { return num_vertices_; }
    Time horizon() const { return horizon_; }
    const std::vector<MasterRow>& rows() const { return rows_; }

    // Normalizes (sort + dedupe cells) and appends; returns false when the
    // row is already present. Rows must be non-empty.
    bool add_row(MasterRow row);

private:
    VertexId num_vertices_;
    Time horizon_;
    std::vector<MasterRow> rows_;
};

struct MasterSolution {
    std::vector<Interval> hulls;  // per vertex; empty interval = unused
    long long cost = 0;
    uint64_t nodes = 0;
    bool proven_optimal = false;
    bool found = false;  // false when pruned out by incumbent_bound or deadline
};

// Wall-clock budget; default-constructed = unlimited.
class Deadline {
public:
    Deadline() = default;
    static Deadline after_seconds(double seconds) {
        Deadline d;
        d.at_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(seconds));
        d.unlimited_ = false;
        return d;
    }
    bool expired() const {
        return !unlimited_ && std::chrono::steady_clock::now() >= at_;
    }

private:
    std::chrono::steady_clock::time_point at_{};
    bool unlimited_ = true;
};

// Exact master solver interface. The in-repo branch-and-bound is the
// default; an external MILP bridge can slot in behind the same interface
// without touching the lazy loop.
class MasterBackend {
public:
    virtual ~MasterBackend() = default;
    virtual std::string name() const = 0;
    virtual MasterSolution solve(const MasterProblem& problem,
                                 std::optional<long long> incumbent_bound,
                                 const Deadline& deadline) = 0;
};

std::unique_ptr<MasterBackend> make_master_backend(const std::string& name);

// Minimum-cardinality contiguous selection hitting every row, via the
// default backend. Branches on the cells of a minimum-size uncovered row;
// lower bound is the size of a greedily built family of pairwise
// cell-disjoint uncovered rows. Among equal-cost optima, prefers fewer
// blocked vertices.
MasterSolution solve_master(const MasterProblem& problem,
                            std::optional<long long> incumbent_bound = std::nullopt);

struct SolverConfig {
    double timeout_seconds = 3600.0;  // per-instance budget
    int batch_size = 1;               // violating paths added per master solve
    size_t greedy_path_limit = 1000;
    std::string backend = "bnb";
};

struct BruteForceLimits {
    VertexId max_vertices = 7;
    Time max_horizon = 8;
};

struct SolveReport {
    SeparatorTimeline timeline;
    long long length = 0;          // SL
    int separator_vertices = 0;    // |V_sep|
    double avg_interval = 0.0;     // SL / |V_sep|, 0 when no vertex blocked
    uint64_t generated_constraints = 0;
    uint64_t branch_nodes = 0;
    double wall_seconds = 0.0;
    bool optimal = false;
    bool timed_out = false;
};

// Exact minimum-length separator timeline via the lazy loop. Throws
// ErrorKind::unseparable when a direct temporal arc s -> z exists. On
// timeout, returns a repaired valid incumbent with optimal=false and
// timed_out=true.
SolveReport solve_exact(const Instance& instance, const SolverConfig& config = {});

// Density-greedy baseline over an enumerated path pool, then lazy repair
// until valid. Never claims optimality.
SolveReport solve_greedy(const Instance& instance, const SolverConfig& config = {});

// Exhaustive oracle: scans per-vertex interval assignments in nondecreasing
// total-length order and returns the first valid separator. Candidate
// interval endpoints are restricted to each vertex's outgoing step times on
// d-feasible paths, which loses no optimum (shrinking an interval endpoint
// to the nearest such time separates the same paths at no greater length).
SolveReport brute_force_min(const Instance& instance, const BruteForceLimits& limits = {});

}  // namespace tempsep

#endif
