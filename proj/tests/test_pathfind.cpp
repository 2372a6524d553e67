#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "tempsep/pathfind.hpp"
#include "test_util.hpp"

using namespace tempsep;
using test::make_example_instance;

namespace {

SeparatorTimeline random_timeline(SplitMix64& rng, const Instance& inst) {
    SeparatorTimeline tl(inst.graph.vertex_count());
    for (VertexId v = 0; v < inst.graph.vertex_count(); ++v) {
        if (v == inst.source || v == inst.target) continue;
        if (rng.below(2) == 0) continue;
        Time lo = static_cast<Time>(rng.range(1, inst.graph.horizon()));
        Time hi = static_cast<Time>(rng.range(lo, inst.graph.horizon()));
        tl.set(v, Interval::closed(lo, hi));
    }
    return tl;
}

bool separated_by(const SeparatorTimeline& tl, const TemporalPath& path) {
    for (const auto& st : path.steps())
        if (tl.at(st.from).contains(st.t)) return true;
    return false;
}

}  // namespace

TEST_CASE("enumerate_paths finds exactly the two example paths") {
    auto inst = make_example_instance();
    auto result = enumerate_paths(inst);
    REQUIRE(result.paths.size() == 2);
    CHECK_FALSE(result.limit_hit);
    auto p1 = test::example_path_sbfz(inst);
    auto p2 = test::example_path_sacfz(inst);
    CHECK(((result.paths[0] == p1 && result.paths[1] == p2) ||
           (result.paths[0] == p2 && result.paths[1] == p1)));
}

TEST_CASE("enumerate_paths respects the deadline") {
    CHECK(enumerate_paths(make_example_instance(3)).paths.size() == 1);
    CHECK(enumerate_paths(make_example_instance(1)).paths.empty());
}

TEST_CASE("enumerate_paths signals truncation at the limit") {
    auto inst = make_example_instance();
    auto result = enumerate_paths(inst, 1);
    CHECK(result.paths.size() == 1);
    CHECK(result.limit_hit);
}

TEST_CASE("enumerate_paths is deterministic and duplicate-free") {
    SplitMix64 rng(411);
    for (int trial = 0; trial < 40; ++trial) {
        auto inst = test::random_instance(rng);
        auto a = enumerate_paths(inst);
        auto b = enumerate_paths(inst);
        REQUIRE(a.paths.size() == b.paths.size());
        for (size_t i = 0; i < a.paths.size(); ++i) CHECK(a.paths[i] == b.paths[i]);
        std::set<std::vector<std::tuple<VertexId, VertexId, Time>>> seen;
        for (const auto& p : a.paths) {
            std::vector<std::tuple<VertexId, VertexId, Time>> key;
            for (const auto& st : p.steps()) key.emplace_back(st.from, st.to, st.t);
            CHECK(seen.insert(key).second);
        }
    }
}

TEST_CASE("find_violating_path on the example instance") {
    auto inst = make_example_instance();
    SeparatorTimeline empty(inst.graph.vertex_count());

    auto violating = find_violating_path(inst, empty);
    REQUIRE(violating.has_value());
    auto p1 = test::example_path_sbfz(inst);
    auto p2 = test::example_path_sacfz(inst);
    CHECK((*violating == p1 || *violating == p2));

    SeparatorTimeline blocked(inst.graph.vertex_count());
    blocked.set(4, Interval::closed(5, 6));  // I_f = [5,6]
    CHECK_FALSE(find_violating_path(inst, blocked).has_value());
    CHECK(is_valid_separator(inst, blocked));

    SeparatorTimeline pair(inst.graph.vertex_count());
    pair.set(2, Interval::closed(5, 5));  // b
    pair.set(3, Interval::closed(4, 4));  // c
    CHECK(is_valid_separator(inst, pair));

    CHECK_FALSE(is_valid_separator(inst, empty));
}

TEST_CASE("a direct s-z temporal arc can never be blocked") {
    auto g = TemporalGraph::build({"s", "mid", "z"}, {{0, 2, {3}}}, 3);
    auto inst = Instance::make(g, 0, 2, 1);
    SeparatorTimeline tl(3);
    tl.set(1, Interval::closed(1, 3));
    auto violating = find_violating_path(inst, tl);
    REQUIRE(violating.has_value());
    CHECK(violating->steps().size() == 1);
    CHECK(traveling_time(*violating) == 1);
}

TEST_CASE("violating paths are sound and the oracle is complete") {
    SplitMix64 rng(20240);
    int invalid_seen = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto inst = test::random_instance(rng);
        auto timeline = random_timeline(rng, inst);
        auto all = enumerate_paths(inst).paths;
        bool any_unseparated = false;
        for (const auto& p : all)
            if (!separated_by(timeline, p)) any_unseparated = true;

        auto violating = find_violating_path(inst, timeline);
        CHECK(violating.has_value() == any_unseparated);
        if (violating) {
            ++invalid_seen;
            CHECK(traveling_time(*violating) <= inst.deadline);
            CHECK(violating->source() == inst.source);
            CHECK(violating->target() == inst.target);
            CHECK_FALSE(separated_by(timeline, *violating));
        }
    }
    CHECK(invalid_seen > 20);  // the trials must actually exercise both outcomes
}

TEST_CASE("count_walks matches the example and bounds the path count") {
    auto inst = make_example_instance();
    auto walks = count_walks(inst);
    CHECK(walks.value == 2);
    CHECK_FALSE(walks.exact);
    CHECK(walks.complete);

    auto exact = count_paths_exact(inst, 100000);
    CHECK(exact.value == 2);
    CHECK(exact.exact);
    CHECK(exact.complete);

    SplitMix64 rng(5150);
    for (int trial = 0; trial < 120; ++trial) {
        auto random = test::random_instance(rng);
        auto w = count_walks(random);
        auto p = count_paths_exact(random, 1u << 20);
        REQUIRE(p.complete);
        CHECK(w.value >= p.value);
    }
}

TEST_CASE("count_walks on tiny shapes") {
    auto disconnected = Instance::make(
        TemporalGraph::build({"s", "m", "z"}, {{0, 1, {1}}}, 2), 0, 2, 2);
    CHECK(count_walks(disconnected).value == 0);

    // Two disjoint 2-arc routes.
    auto parallel = Instance::make(
        TemporalGraph::build({"s", "x", "y", "z"},
                             {{0, 1, {1}}, {1, 3, {2}}, {0, 2, {1}}, {2, 3, {2}}}, 2),
        0, 3, 2);
    CHECK(count_walks(parallel).value == 2);
}

TEST_CASE("count_paths_exact respects the deadline and its budget") {
    CHECK(count_paths_exact(make_example_instance(3), 100000).value == 1);

    auto truncated = count_paths_exact(make_example_instance(), 1);
    CHECK_FALSE(truncated.complete);
    CHECK(truncated.value == 0);
}

TEST_CASE("path count is monotone in the deadline") {
    SplitMix64 rng(8080);
    for (int trial = 0; trial < 60; ++trial) {
        auto base = test::random_instance(rng);
        mpz_class previous = 0;
        for (Time d = 1; d <= base.graph.horizon(); ++d) {
            auto inst = Instance::make(base.graph, base.source, base.target, d);
            auto count = count_paths_exact(inst, 1u << 20);
            REQUIRE(count.complete);
            CHECK(count.value >= previous);
            previous = count.value;
        }
    }
}

TEST_CASE("min_traveling_time") {
    CHECK(min_traveling_time(make_example_instance()) == 3);

    auto single = Instance::make(TemporalGraph::build({"s", "z"}, {{0, 1, {3}}}, 3), 0, 1, 1);
    CHECK(min_traveling_time(single) == 1);

    auto disconnected = Instance::make(
        TemporalGraph::build({"s", "m", "z"}, {{0, 1, {1}}}, 2), 0, 2, 2);
    CHECK_FALSE(min_traveling_time(disconnected).has_value());

    // Cross-check against enumeration with the deadline maxed out.
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 150; ++trial) {
        auto base = test::random_instance(rng);
        auto relaxed =
            Instance::make(base.graph, base.source, base.target, base.graph.horizon());
        auto paths = enumerate_paths(relaxed).paths;
        std::optional<Time> expected;
        for (const auto& p : paths) {
            Time trt = traveling_time(p);
            if (!expected || trt < *expected) expected = trt;
        }
        CHECK(min_traveling_time(relaxed) == expected);
    }
}
