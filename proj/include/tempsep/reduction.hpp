#ifndef TEMPSEP_REDUCTION_HPP
#define TEMPSEP_REDUCTION_HPP

#include <iosfwd>
#include <set>
#include <vector>

#include "tempsep/core.hpp"

/*
 * Set cover <-> separator timeline reduction.
 *
 * A set-cover instance (universe [1..n], collection C_1..C_m) is encoded
 * as a temporal graph over {s, z, v_1..v_m} with deadline d = n:
 *
 *   - gadget arcs (s -> v_j, 2j-1) and (v_j -> z, 2j) force time 2j into
 *     I_{v_j} in any valid separator;
 *   - each element u_i gets one chain through the vertices of its
 *     containing sets (in index order) with consecutive timestamps inside
 *     a private window placed after big_M = (mn)^3.
 *
 * With that layout the deadline-feasible s-z paths are exactly the m
 * gadget paths plus the n element chains, covers map to separators of
 * bounded length, and separators map back to covers by collecting the
 * vertices whose interval length reaches big_M.
 *
 * The encoding requires every element to belong to at most n-1 sets (a
 * chain of c+1 arcs has traveling time c+1, which must stay within d = n)
 * and the windows to fit below the interval end (mn)^3 + 2mn + n; violations
 * are rejected up front.
 */

namespace tempsep {

struct SetCoverInstance {
    int universe_size = 0;                // n
    std::vector<std::vector<int>> sets;   // m sets of element ids in [1..n]

    int set_count() const { return static_cast<int>(sets.size()); }
};

struct ReductionInstance {
    Instance instance;                    // d = n, |V| = m + 2
    long long big_m = 0;                  // (mn)^3
    std::vector<Interval> element_windows;  // index i-1 -> window of element i

    VertexId set_vertex(int j) const { return static_cast<VertexId>(j); }  // j in [1..m]
};

// Builds the encoded d-MinIntSep instance. Throws invalid_set_cover when
// the instance violates the invariants or falls outside the encodable
// domain described above.
ReductionInstance from_set_cover(const SetCoverInstance& sc);

// Maps a set cover to a separator timeline: chosen sets get
// I_{v_j} = [2j, (nm)^3 + 2mn + n], the others I_{v_j} = [2j, 2j]. The
// result is checked to be a valid separator; its length is at most
// ((nm)^3 + 2mn + n + 1)|cover| + m - |cover|.
SeparatorTimeline cover_to_timeline(const ReductionInstance& ri, const std::set<int>& cover);

// Maps a valid separator timeline back to the cover
// { j : length(I_{v_j}) >= (mn)^3 }. Throws not_a_separator when the
// timeline does not separate the encoded instance.
std::set<int> timeline_to_cover(const ReductionInstance& ri, const SeparatorTimeline& timeline);

// Minimum-cardinality cover by subset enumeration in increasing size;
// requires m <= 20. Throws uncoverable when some element is in no set.
std::set<int> brute_force_set_cover(const SetCoverInstance& sc);

// Lemma-derived length budget for a cover of the given size.
long long cover_length_bound(const SetCoverInstance& sc, int cover_size);

// Text format: first line "n m", then m lines of space-separated element ids.
SetCoverInstance parse_set_cover(std::istream& in);
std::string write_set_cover(const SetCoverInstance& sc);

}  // namespace tempsep

#endif
