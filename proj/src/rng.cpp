#include "tempsep/rng.hpp"

#include <algorithm>
#include <set>

namespace tempsep {

std::vector<int> SplitMix64::sample_distinct(int lo, int hi, int k) {
    std::set<int> picked;
    while (static_cast<int>(picked.size()) < k)
        picked.insert(static_cast<int>(range(lo, hi)));
    return std::vector<int>(picked.begin(), picked.end());
}

}  // namespace tempsep
