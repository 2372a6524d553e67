#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "tempsep/pathfind.hpp"
#include "tempsep/solver.hpp"
#include "test_util.hpp"

using namespace tempsep;
using test::make_example_instance;

namespace {

// Independent master oracle: exhaust every per-vertex hull assignment over
// the times mentioned in the rows.
long long exhaustive_master_cost(const MasterProblem& problem) {
    std::map<VertexId, std::vector<Time>> times;
    for (const auto& row : problem.rows())
        for (const auto& cell : row) times[cell.v].push_back(cell.t);
    std::vector<VertexId> vertices;
    std::vector<std::vector<Interval>> choices;
    for (auto& [v, list] : times) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        std::vector<Interval> c{Interval::empty()};
        for (size_t i = 0; i < list.size(); ++i)
            for (size_t j = i; j < list.size(); ++j)
                c.push_back(Interval::closed(list[i], list[j]));
        vertices.push_back(v);
        choices.push_back(std::move(c));
    }
    long long best = -1;
    std::vector<size_t> odo(vertices.size(), 0);
    for (;;) {
        long long cost = 0;
        for (size_t i = 0; i < vertices.size(); ++i) cost += choices[i][odo[i]].length();
        bool feasible = true;
        for (const auto& row : problem.rows()) {
            bool hit = false;
            for (const auto& cell : row) {
                auto it = std::find(vertices.begin(), vertices.end(), cell.v);
                if (it == vertices.end()) continue;
                size_t idx = static_cast<size_t>(it - vertices.begin());
                if (choices[idx][odo[idx]].contains(cell.t)) {
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                feasible = false;
                break;
            }
        }
        if (feasible && (best < 0 || cost < best)) best = cost;
        size_t pos = vertices.size();
        bool done = vertices.empty();
        while (pos > 0) {
            --pos;
            if (++odo[pos] < choices[pos].size()) break;
            odo[pos] = 0;
            if (pos == 0) done = true;
        }
        if (done) break;
    }
    return best;
}

MasterProblem example_master() {
    // Rows of the two example paths: {(f,5),(a,3),(c,4)} and {(f,6),(b,5)}
    // with a=1, b=2, c=3, f=4.
    MasterProblem m(6, 6);
    m.add_row({{4, 5}, {1, 3}, {3, 4}});
    m.add_row({{4, 6}, {2, 5}});
    return m;
}

}  // namespace

TEST_CASE("solve_master covers the example rows with one two-slot hull") {
    auto m = example_master();
    auto solution = solve_master(m);
    REQUIRE(solution.found);
    CHECK(solution.proven_optimal);
    CHECK(solution.cost == 2);
    // Equal-cost tie-break prefers the single-vertex hull f = [5,6].
    CHECK(solution.hulls[4] == Interval::closed(5, 6));
}

TEST_CASE("solve_master trivial single row") {
    MasterProblem m(3, 6);
    m.add_row({{1, 3}});
    auto solution = solve_master(m);
    REQUIRE(solution.found);
    CHECK(solution.cost == 1);
    CHECK(solution.hulls[1] == Interval::closed(3, 3));
}

TEST_CASE("contiguity forces intermediate timestamps to be paid") {
    MasterProblem m(3, 6);
    m.add_row({{1, 2}});
    m.add_row({{1, 5}});
    auto solution = solve_master(m);
    REQUIRE(solution.found);
    CHECK(solution.cost == 4);
    CHECK(solution.hulls[1] == Interval::closed(2, 5));
}

TEST_CASE("add_row normalizes, deduplicates and rejects empty rows") {
    MasterProblem m(4, 8);
    CHECK(m.add_row({{2, 5}, {1, 3}, {2, 5}}));
    CHECK(m.rows()[0] == MasterRow{{1, 3}, {2, 5}});
    CHECK_FALSE(m.add_row({{1, 3}, {2, 5}}));
    CHECK(m.rows().size() == 1);
    CHECK_THROWS_AS(m.add_row({}), Error);
    CHECK_THROWS_AS(m.add_row({{1, 9}}), Error);
    CHECK_THROWS_AS(m.add_row({{7, 1}}), Error);
}

TEST_CASE("solve_master equals exhaustive enumeration on small problems") {
    SplitMix64 rng(62);
    for (int trial = 0; trial < 150; ++trial) {
        MasterProblem m(5, 6);
        int row_count = static_cast<int>(rng.range(1, 3));
        for (int r = 0; r < row_count; ++r) {
            MasterRow row;
            int cells = static_cast<int>(rng.range(1, 4));
            for (int c = 0; c < cells; ++c)
                row.push_back({static_cast<VertexId>(rng.range(1, 4)),
                               static_cast<Time>(rng.range(1, 6))});
            m.add_row(std::move(row));
        }
        auto solution = solve_master(m);
        REQUIRE(solution.found);
        CHECK(solution.cost == exhaustive_master_cost(m));
    }
}

TEST_CASE("solve_master honors an incumbent bound") {
    MasterProblem m(3, 6);
    m.add_row({{1, 2}});
    m.add_row({{1, 5}});
    CHECK_FALSE(solve_master(m, 4).found);  // nothing strictly better than 4
    auto relaxed = solve_master(m, 5);
    REQUIRE(relaxed.found);
    CHECK(relaxed.cost == 4);
}

TEST_CASE("solve_exact on the example instance") {
    auto inst = make_example_instance();
    auto report = solve_exact(inst);
    CHECK(report.length == 2);
    CHECK(report.separator_vertices == 1);
    CHECK(report.avg_interval == doctest::Approx(2.0));
    CHECK(report.optimal);
    CHECK_FALSE(report.timed_out);
    CHECK(report.generated_constraints >= 2);
    CHECK(is_valid_separator(inst, report.timeline));
}

TEST_CASE("solve_exact refuses a direct s-z temporal arc") {
    auto g = TemporalGraph::build({"s", "m", "z"}, {{0, 2, {3}}, {0, 1, {1}}}, 3);
    auto inst = Instance::make(g, 0, 2, 2);
    CHECK_THROWS_AS(solve_exact(inst), Error);
    CHECK_THROWS_AS(solve_greedy(inst), Error);
    CHECK_THROWS_AS(brute_force_min(inst), Error);
}

TEST_CASE("instances without feasible paths have the empty optimum") {
    auto g = TemporalGraph::build({"s", "m", "z"}, {{0, 1, {2}}, {1, 2, {1}}}, 3);
    auto inst = Instance::make(g, 0, 2, 3);
    auto report = solve_exact(inst);
    CHECK(report.length == 0);
    CHECK(report.optimal);
    CHECK(report.generated_constraints == 0);
    auto brute = brute_force_min(inst);
    CHECK(brute.length == 0);
    auto greedy = solve_greedy(inst);
    CHECK(greedy.length == 0);
}

TEST_CASE("brute force agrees with the lazy exact solver on random instances") {
    SplitMix64 rng(777);
    int solved = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto inst = test::random_instance(rng);
        auto exact = solve_exact(inst);
        auto brute = brute_force_min(inst);
        CHECK(exact.length == brute.length);
        CHECK(exact.optimal);
        CHECK(is_valid_separator(inst, exact.timeline));
        CHECK(is_valid_separator(inst, brute.timeline));
        ++solved;
    }
    CHECK(solved == 40);
}

TEST_CASE("brute force enforces its limits") {
    auto inst = make_example_instance();
    CHECK_THROWS_AS(brute_force_min(inst, BruteForceLimits{5, 8}), Error);
    CHECK_THROWS_AS(brute_force_min(inst, BruteForceLimits{7, 5}), Error);
    auto report = brute_force_min(inst);
    CHECK(report.length == 2);
    CHECK(report.optimal);
}

TEST_CASE("greedy matches the optimum on the example and never beats it") {
    auto inst = make_example_instance();
    auto greedy = solve_greedy(inst);
    CHECK(greedy.length == 2);
    CHECK_FALSE(greedy.optimal);
    CHECK(is_valid_separator(inst, greedy.timeline));

    SplitMix64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        auto random = test::random_instance(rng);
        auto g = solve_greedy(random);
        auto e = solve_exact(random);
        CHECK(g.length >= e.length);
        CHECK(is_valid_separator(random, g.timeline));
    }
}

TEST_CASE("greedy with a tiny path pool still repairs to validity") {
    auto inst = make_example_instance();
    SolverConfig config;
    config.greedy_path_limit = 1;
    auto report = solve_greedy(inst, config);
    CHECK(is_valid_separator(inst, report.timeline));
    CHECK(report.length >= 2);
}

TEST_CASE("optimal separator length is monotone in the deadline") {
    SplitMix64 rng(1212);
    for (int trial = 0; trial < 25; ++trial) {
        auto base = test::random_instance(rng);
        long long previous = 0;
        for (Time d = 1; d <= base.graph.horizon(); ++d) {
            auto inst = Instance::make(base.graph, base.source, base.target, d);
            auto report = solve_exact(inst);
            CHECK(report.length >= previous);
            previous = report.length;
        }
    }
}

TEST_CASE("an expired budget still yields a valid incumbent") {
    auto inst = make_example_instance();
    SolverConfig config;
    config.timeout_seconds = 1e-9;
    auto report = solve_exact(inst, config);
    CHECK(report.timed_out);
    CHECK_FALSE(report.optimal);
    CHECK(is_valid_separator(inst, report.timeline));
}

TEST_CASE("batched constraint generation reaches the same optimum") {
    SplitMix64 rng(989);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = test::random_instance(rng);
        SolverConfig batched;
        batched.batch_size = 4;
        auto a = solve_exact(inst);
        auto b = solve_exact(inst, batched);
        CHECK(a.length == b.length);
    }
}

TEST_CASE("unknown master backend is rejected") {
    CHECK_THROWS_AS(make_master_backend("simplex"), Error);
    CHECK(make_master_backend("bnb")->name() == "bnb");
}
