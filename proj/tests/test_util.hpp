#ifndef TEMPSEP_TEST_UTIL_HPP
#define TEMPSEP_TEST_UTIL_HPP

#include <cstdlib>
#include <string>
#include <vector>

#include "tempsep/core.hpp"
#include "tempsep/rng.hpp"

namespace tempsep::test {

// Six-vertex example instance used throughout the tests: with deadline 4
// there are exactly two deadline-feasible s-z paths, and {I_f = [5,6]} is a
// minimum separator of length 2.
inline Instance make_example_instance(Time deadline = 4) {
    std::vector<std::string> names{"s", "a", "b", "c", "f", "z"};
    const VertexId s = 0, a = 1, b = 2, c = 3, f = 4, z = 5;
    std::vector<ArcSpec> arcs{
        {s, a, {1, 2}}, {s, b, {4}}, {a, b, {1, 2}}, {b, c, {2}}, {a, c, {3}},
        {b, f, {2, 5}}, {c, f, {4}}, {f, z, {5, 6}},  {c, z, {3}},
    };
    return Instance::make(TemporalGraph::build(names, arcs, 6), s, z, deadline);
}

inline TemporalPath example_path_sbfz(const Instance& inst) {
    return TemporalPath(inst.graph, {{0, 2, 4}, {2, 4, 5}, {4, 5, 6}});
}

inline TemporalPath example_path_sacfz(const Instance& inst) {
    return TemporalPath(inst.graph, {{0, 1, 2}, {1, 3, 3}, {3, 4, 4}, {4, 5, 5}});
}

struct RandomInstanceOptions {
    int min_vertices = 3;
    int max_vertices = 7;
    Time min_horizon = 2;
    Time max_horizon = 8;
    int max_temporal_arcs = 25;
    bool allow_direct_sz = false;  // direct s-z arcs make instances unseparable
    Time fixed_deadline = 0;       // 0 = draw uniformly from [1, T]
};

// Small random instance with s = 0 and z = last vertex. Arc multiset and
// deadline are drawn from the given generator, so a fixed seed pins the
// whole instance.
inline Instance random_instance(SplitMix64& rng, const RandomInstanceOptions& opt = {}) {
    const int n = static_cast<int>(rng.range(opt.min_vertices, opt.max_vertices));
    const Time horizon = static_cast<Time>(rng.range(opt.min_horizon, opt.max_horizon));
    const VertexId s = 0;
    const VertexId z = static_cast<VertexId>(n - 1);

    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));

    const int arc_budget = static_cast<int>(rng.range(1, opt.max_temporal_arcs));
    std::vector<ArcSpec> arcs;
    int used = 0;
    while (used < arc_budget) {
        auto u = static_cast<VertexId>(rng.below(static_cast<uint64_t>(n)));
        auto v = static_cast<VertexId>(rng.below(static_cast<uint64_t>(n)));
        if (u == v) continue;
        if (!opt.allow_direct_sz && u == s && v == z) continue;
        auto t = static_cast<Time>(rng.range(1, horizon));
        arcs.push_back(ArcSpec{u, v, {t}});
        ++used;
    }
    Time deadline = opt.fixed_deadline > 0 ? std::min(opt.fixed_deadline, horizon)
                                           : static_cast<Time>(rng.range(1, horizon));
    return Instance::make(TemporalGraph::build(names, arcs, horizon), s, z, deadline);
}

inline std::string require_env(const char* name) {
    const char* value = std::getenv(name);
    return value ? std::string(value) : std::string();
}

}  // namespace tempsep::test

#endif
