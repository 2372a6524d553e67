#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "tempsep/core.hpp"
#include "test_util.hpp"

using namespace tempsep;
using test::make_example_instance;

namespace {

bool fails_with(ErrorKind kind, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

}  // namespace

TEST_CASE("build_graph merges arc records and counts temporal arcs") {
    auto inst = make_example_instance();
    CHECK(inst.graph.vertex_count() == 6);
    CHECK(inst.graph.arcs().size() == 9);
    CHECK(inst.graph.temporal_arc_count() == 13);

    // Split records for the same ordered pair merge, duplicates collapse.
    auto g = TemporalGraph::build({"x", "y"}, {{0, 1, {3, 1}}, {0, 1, {1, 2}}}, 5);
    CHECK(g.arcs().size() == 1);
    CHECK(g.arcs()[0].times == std::vector<Time>{1, 2, 3});
}

TEST_CASE("build_graph accepts a single vertex with no arcs") {
    auto g = TemporalGraph::build({"only"}, {}, 1);
    CHECK(g.vertex_count() == 1);
    CHECK(g.temporal_arc_count() == 0);
}

TEST_CASE("build_graph rejects bad input") {
    CHECK(fails_with(ErrorKind::self_loop,
                     [] { TemporalGraph::build({"a", "b"}, {{0, 0, {1}}}, 3); }));
    CHECK(fails_with(ErrorKind::timestamp_out_of_range,
                     [] { TemporalGraph::build({"a", "b"}, {{0, 1, {4}}}, 3); }));
    CHECK(fails_with(ErrorKind::timestamp_out_of_range,
                     [] { TemporalGraph::build({"a", "b"}, {{0, 1, {0}}}, 3); }));
    CHECK(fails_with(ErrorKind::unknown_vertex,
                     [] { TemporalGraph::build({"a", "b"}, {{0, 2, {1}}}, 3); }));
    CHECK(fails_with(ErrorKind::empty_timestamp_set,
                     [] { TemporalGraph::build({"a", "b"}, {{0, 1, {}}}, 3); }));
    CHECK(fails_with(ErrorKind::bad_params,
                     [] { TemporalGraph::build({"a", "a"}, {}, 3); }));
}

TEST_CASE("traveling time follows the last-minus-first rule") {
    auto inst = make_example_instance();
    CHECK(traveling_time(test::example_path_sbfz(inst)) == 3);
    CHECK(traveling_time(test::example_path_sacfz(inst)) == 4);

    auto g = TemporalGraph::build({"s", "z"}, {{0, 1, {3}}}, 3);
    CHECK(traveling_time(TemporalPath(g, {{0, 1, 3}})) == 1);
}

TEST_CASE("traveling time is at least the step count") {
    SplitMix64 rng(7001);
    int sampled = 0;
    for (int i = 0; i < 200 && sampled < 50; ++i) {
        auto inst = test::random_instance(rng);
        // Walk forward greedily to build some valid path, if any.
        for (const auto& start : inst.graph.out(inst.source)) {
            std::vector<PathStep> steps{{start.from, start.to, start.t}};
            std::vector<bool> seen(inst.graph.vertex_count(), false);
            seen[inst.source] = seen[start.to] = true;
            while (true) {
                bool extended = false;
                for (const auto& ta : inst.graph.out(steps.back().to)) {
                    if (ta.t > steps.back().t && !seen[ta.to]) {
                        steps.push_back({ta.from, ta.to, ta.t});
                        seen[ta.to] = true;
                        extended = true;
                        break;
                    }
                }
                if (!extended) break;
            }
            TemporalPath path(inst.graph, steps);
            CHECK(traveling_time(path) >= static_cast<Time>(path.steps().size()));
            CHECK(traveling_time(path) >= 1);
            ++sampled;
            break;
        }
    }
    CHECK(sampled > 0);
}

TEST_CASE("temporal path constructor enforces its invariants") {
    auto inst = make_example_instance();
    const auto& g = inst.graph;
    // Not chained.
    CHECK_THROWS_AS(TemporalPath(g, {{0, 1, 1}, {3, 4, 4}}), Error);
    // Times not strictly increasing.
    CHECK_THROWS_AS(TemporalPath(g, {{0, 1, 2}, {1, 3, 2}}), Error);
    // Vertex revisited: s,a (1), a,b (2), b,? nothing back to a exists, so
    // fabricate via arc that exists: a->c, c->f, f->z is fine; instead check
    // an arc not present in the graph.
    CHECK_THROWS_AS(TemporalPath(g, {{0, 1, 1}, {1, 5, 2}}), Error);
    // Empty path.
    CHECK_THROWS_AS(TemporalPath(g, {}), Error);
}

TEST_CASE("paths that would revisit a vertex are rejected") {
    // s -> a -> b -> a is expressible arc-wise here, and must be rejected.
    auto g = TemporalGraph::build({"s", "a", "b"},
                                  {{0, 1, {1}}, {1, 2, {2}}, {2, 1, {3}}}, 4);
    CHECK_THROWS_AS(TemporalPath(g, {{0, 1, 1}, {1, 2, 2}, {2, 1, 3}}), Error);
}

TEST_CASE("separates looks only at outgoing steps inside the interval") {
    auto inst = make_example_instance();
    auto p1 = test::example_path_sbfz(inst);
    const VertexId f = 4;
    CHECK(separates(f, Interval::closed(5, 6), p1));
    CHECK_FALSE(separates(f, Interval::empty(), p1));
    // f's outgoing step on P1 is at 6; the incoming arc at 5 does not count.
    CHECK_FALSE(separates(f, Interval::closed(5, 5), p1));
}

TEST_CASE("separates is monotone in the interval") {
    auto inst = make_example_instance();
    auto p2 = test::example_path_sacfz(inst);
    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        auto v = static_cast<VertexId>(rng.below(6));
        Time lo = static_cast<Time>(rng.range(1, 6));
        Time hi = static_cast<Time>(rng.range(lo, 6));
        Time lo2 = static_cast<Time>(rng.range(1, lo));
        Time hi2 = static_cast<Time>(rng.range(hi, 6));
        if (separates(v, Interval::closed(lo, hi), p2))
            CHECK(separates(v, Interval::closed(lo2, hi2), p2));
    }
}

TEST_CASE("timeline length sums interval lengths") {
    auto inst = make_example_instance();
    SeparatorTimeline tl(inst.graph.vertex_count());
    CHECK(timeline_length(tl) == 0);
    CHECK(separator_vertex_count(tl) == 0);

    tl.set(4, Interval::closed(5, 6));
    CHECK(timeline_length(tl) == 2);
    CHECK(separator_vertex_count(tl) == 1);

    SeparatorTimeline tl2(inst.graph.vertex_count());
    tl2.set(1, Interval::closed(1, 3));
    tl2.set(2, Interval::closed(2, 2));
    CHECK(timeline_length(tl2) == 4);
    CHECK(separator_vertex_count(tl2) == 2);
}

TEST_CASE("interval accounting") {
    CHECK(Interval::empty().length() == 0);
    CHECK(Interval::closed(2, 2).length() == 1);
    CHECK(Interval::closed(2, 5).length() == 4);
    CHECK_FALSE(Interval::empty().contains(1));
    CHECK(Interval::closed(2, 5).contains(2));
    CHECK(Interval::closed(2, 5).contains(5));
    CHECK_FALSE(Interval::closed(2, 5).contains(6));
    CHECK_THROWS_AS(Interval::closed(3, 2), Error);
    CHECK_THROWS_AS(Interval::closed(0, 2), Error);
}

TEST_CASE("instance construction and timeline validation") {
    auto inst = make_example_instance();
    CHECK_THROWS_AS(Instance::make(inst.graph, 0, 0, 3), Error);
    CHECK_THROWS_AS(Instance::make(inst.graph, 0, 5, 0), Error);
    CHECK_THROWS_AS(Instance::make(inst.graph, 0, 5, 7), Error);

    SeparatorTimeline tl(inst.graph.vertex_count());
    tl.set(0, Interval::closed(1, 1));  // interval on s is not allowed
    CHECK(fails_with(ErrorKind::bad_timeline, [&] { validate_timeline(inst, tl); }));

    SeparatorTimeline short_tl(3);
    CHECK(fails_with(ErrorKind::bad_timeline, [&] { validate_timeline(inst, short_tl); }));
}
