#include "tempsep/reduction.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "tempsep/pathfind.hpp"

namespace tempsep {

namespace {

void validate_instance(const SetCoverInstance& sc) {
    const int n = sc.universe_size;
    const int m = sc.set_count();
    if (n < 2 || m < 2)
        fail(ErrorKind::invalid_set_cover, "need n >= 2 and m >= 2");
    std::vector<int> frequency(static_cast<size_t>(n) + 1, 0);
    for (int j = 0; j < m; ++j) {
        if (sc.sets[static_cast<size_t>(j)].empty())
            fail(ErrorKind::invalid_set_cover, "set " + std::to_string(j + 1) + " is empty");
        std::vector<int> seen;
        for (int element : sc.sets[static_cast<size_t>(j)]) {
            if (element < 1 || element > n)
                fail(ErrorKind::invalid_set_cover,
                     "element " + std::to_string(element) + " outside [1," + std::to_string(n) +
                         "]");
            seen.push_back(element);
            ++frequency[static_cast<size_t>(element)];
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            fail(ErrorKind::invalid_set_cover,
                 "set " + std::to_string(j + 1) + " repeats an element");
    }
    for (int i = 1; i <= n; ++i) {
        if (frequency[static_cast<size_t>(i)] == 0)
            fail(ErrorKind::invalid_set_cover,
                 "element " + std::to_string(i) + " belongs to no set");
        if (frequency[static_cast<size_t>(i)] > n - 1)
            fail(ErrorKind::invalid_set_cover,
                 "element " + std::to_string(i) + " belongs to " +
                     std::to_string(frequency[static_cast<size_t>(i)]) +
                     " sets; a chain over more than n-1 sets cannot meet deadline n");
    }
}

std::vector<int> containing_sets(const SetCoverInstance& sc, int element) {
    std::vector<int> result;
    for (int j = 1; j <= sc.set_count(); ++j) {
        const auto& set = sc.sets[static_cast<size_t>(j - 1)];
        if (std::find(set.begin(), set.end(), element) != set.end()) result.push_back(j);
    }
    return result;
}

bool is_cover(const SetCoverInstance& sc, const std::set<int>& cover) {
    for (int j : cover)
        if (j < 1 || j > sc.set_count()) return false;
    std::vector<char> hit(static_cast<size_t>(sc.universe_size) + 1, 0);
    for (int j : cover)
        for (int element : sc.sets[static_cast<size_t>(j - 1)])
            hit[static_cast<size_t>(element)] = 1;
    for (int i = 1; i <= sc.universe_size; ++i)
        if (!hit[static_cast<size_t>(i)]) return false;
    return true;
}

}  // namespace

ReductionInstance from_set_cover(const SetCoverInstance& sc) {
    validate_instance(sc);
    const int n = sc.universe_size;
    const int m = sc.set_count();
    const long long mn = static_cast<long long>(m) * n;
    const long long big_m = mn * mn * mn;
    const long long horizon = big_m + 2 * mn + n;
    if (horizon > std::numeric_limits<Time>::max() / 2)
        fail(ErrorKind::invalid_set_cover, "instance too large to encode");

    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(m) + 2);
    names.emplace_back("s");
    for (int j = 1; j <= m; ++j) names.push_back("v" + std::to_string(j));
    names.emplace_back("z");
    const VertexId s = 0;
    const VertexId z = static_cast<VertexId>(m + 1);

    std::vector<ArcSpec> arcs;
    for (int j = 1; j <= m; ++j) {
        arcs.push_back(ArcSpec{s, static_cast<VertexId>(j), {static_cast<Time>(2 * j - 1)}});
        arcs.push_back(ArcSpec{static_cast<VertexId>(j), z, {static_cast<Time>(2 * j)}});
    }

    // Element windows: base (mn)^3 + 2m - 2, spaced n+1 apart. The offset
    // makes the shortest covering interval [2m, base+1] have length exactly
    // (mn)^3, so the timeline_to_cover threshold is tight; the spacing keeps
    // windows mutually unreachable under deadline n.
    std::vector<Interval> windows;
    windows.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const long long base = big_m + 2 * m - 2 + static_cast<long long>(n + 1) * (i - 1);
        auto chain = containing_sets(sc, i);
        const long long last = base + static_cast<long long>(chain.size());
        if (last > horizon)
            fail(ErrorKind::invalid_set_cover,
                 "element windows exceed the horizon; universe too large relative to the "
                 "collection");
        VertexId prev = s;
        long long t = base;
        for (int j : chain) {
            arcs.push_back(ArcSpec{prev, static_cast<VertexId>(j), {static_cast<Time>(t)}});
            prev = static_cast<VertexId>(j);
            ++t;
        }
        arcs.push_back(ArcSpec{prev, z, {static_cast<Time>(t)}});
        windows.push_back(Interval::closed(static_cast<Time>(base), static_cast<Time>(last)));
    }

    ReductionInstance ri;
    ri.instance = Instance::make(
        TemporalGraph::build(std::move(names), arcs, static_cast<Time>(horizon)), s, z,
        static_cast<Time>(n));
    ri.big_m = big_m;
    ri.element_windows = std::move(windows);
    return ri;
}

SeparatorTimeline cover_to_timeline(const ReductionInstance& ri, const std::set<int>& cover) {
    const int m = ri.instance.graph.vertex_count() - 2;
    for (int j : cover)
        if (j < 1 || j > m)
            fail(ErrorKind::not_a_cover, "set index " + std::to_string(j) + " out of range");

    // The cover property is what validity rests on; check it directly by
    // asking whether every element chain passes a chosen vertex.
    SeparatorTimeline timeline(ri.instance.graph.vertex_count());
    const Time horizon = ri.instance.graph.horizon();
    for (int j = 1; j <= m; ++j) {
        const Time anchor = static_cast<Time>(2 * j);
        if (cover.count(j))
            timeline.set(ri.set_vertex(j), Interval::closed(anchor, horizon));
        else
            timeline.set(ri.set_vertex(j), Interval::closed(anchor, anchor));
    }
    if (!is_valid_separator(ri.instance, timeline))
        fail(ErrorKind::not_a_cover, "the given sets do not cover every element");
    return timeline;
}

std::set<int> timeline_to_cover(const ReductionInstance& ri,
                                const SeparatorTimeline& timeline) {
    if (!is_valid_separator(ri.instance, timeline))
        fail(ErrorKind::not_a_separator, "timeline does not separate the encoded instance");
    const int m = ri.instance.graph.vertex_count() - 2;
    std::set<int> cover;
    for (int j = 1; j <= m; ++j)
        if (timeline.at(ri.set_vertex(j)).length() >= ri.big_m) cover.insert(j);

    // Any valid separator holds 2j in I_{v_j} (gadget paths) and blocks each
    // element chain at some containing vertex, whose interval then spans
    // [<=2m, >=base+1] and reaches the threshold. Guaranteed by construction.
    std::vector<char> hit(ri.element_windows.size() + 1, 0);
    for (int j : cover)
        for (const auto& ta : ri.instance.graph.out(ri.set_vertex(j)))
            for (size_t i = 0; i < ri.element_windows.size(); ++i)
                if (ri.element_windows[i].contains(ta.t)) hit[i + 1] = 1;
    for (size_t i = 1; i <= ri.element_windows.size(); ++i)
        if (!hit[i])
            throw std::logic_error("threshold cover misses element " + std::to_string(i));
    return cover;
}

std::set<int> brute_force_set_cover(const SetCoverInstance& sc) {
    const int m = sc.set_count();
    if (m > 20) fail(ErrorKind::limits_exceeded, "brute-force set cover requires m <= 20");
    std::vector<char> coverable(static_cast<size_t>(sc.universe_size) + 1, 0);
    for (const auto& set : sc.sets)
        for (int element : set)
            if (element >= 1 && element <= sc.universe_size)
                coverable[static_cast<size_t>(element)] = 1;
    for (int i = 1; i <= sc.universe_size; ++i)
        if (!coverable[static_cast<size_t>(i)])
            fail(ErrorKind::uncoverable, "element " + std::to_string(i) + " is in no set");

    // Subsets in increasing popcount, lexicographic within a size.
    for (int size = 1; size <= m; ++size) {
        std::vector<int> combo(static_cast<size_t>(size));
        for (int i = 0; i < size; ++i) combo[static_cast<size_t>(i)] = i + 1;
        for (;;) {
            std::set<int> candidate(combo.begin(), combo.end());
            if (is_cover(sc, candidate)) return candidate;
            int pos = size - 1;
            while (pos >= 0 && combo[static_cast<size_t>(pos)] == m - (size - 1 - pos)) --pos;
            if (pos < 0) break;
            ++combo[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < size; ++i)
                combo[static_cast<size_t>(i)] = combo[static_cast<size_t>(i - 1)] + 1;
        }
    }
    fail(ErrorKind::uncoverable, "no cover exists");
}

long long cover_length_bound(const SetCoverInstance& sc, int cover_size) {
    const long long mn = static_cast<long long>(sc.set_count()) * sc.universe_size;
    return (mn * mn * mn + 2 * mn + sc.universe_size + 1) * cover_size +
           (sc.set_count() - cover_size);
}

SetCoverInstance parse_set_cover(std::istream& in) {
    SetCoverInstance sc;
    int m = 0;
    if (!(in >> sc.universe_size >> m))
        fail(ErrorKind::parse_error, "expected header line 'n m'");
    if (sc.universe_size < 1 || m < 1)
        fail(ErrorKind::parse_error, "n and m must be positive");
    std::string rest;
    std::getline(in, rest);
    for (int j = 0; j < m; ++j) {
        std::string line;
        if (!std::getline(in, line))
            fail(ErrorKind::parse_error, "missing line for set " + std::to_string(j + 1));
        std::istringstream row(line);
        std::vector<int> elements;
        int element = 0;
        while (row >> element) elements.push_back(element);
        if (!row.eof())
            fail(ErrorKind::parse_error, "bad token in set " + std::to_string(j + 1));
        sc.sets.push_back(std::move(elements));
    }
    return sc;
}

std::string write_set_cover(const SetCoverInstance& sc) {
    std::ostringstream out;
    out << sc.universe_size << ' ' << sc.set_count() << '\n';
    for (const auto& set : sc.sets) {
        for (size_t i = 0; i < set.size(); ++i) out << (i ? " " : "") << set[i];
        out << '\n';
    }
    return out.str();
}

}  // namespace tempsep
