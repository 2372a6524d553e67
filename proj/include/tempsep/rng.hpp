#ifndef TEMPSEP_RNG_HPP
#define TEMPSEP_RNG_HPP

#include <cstdint>
#include <vector>

namespace tempsep {

/*
 * Seedable, portable random generator used by the instance generators.
 *
 * The core is SplitMix64 (Steele, Lea, Flood: "Fast splittable pseudorandom
 * number generators", OOPSLA 2014) with the usual mixing constants. Bounded
 * draws use unbiased rejection sampling. The full algorithm lives here, in
 * the repo, so that seeded outputs are bit-identical across platforms and
 * standard library versions (std::uniform_int_distribution is not portable).
 */
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, bound), bound >= 1. Rejection keeps it unbiased.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform draw from the inclusive range [lo, hi].
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // k distinct values from [lo, hi], uniform without replacement, sorted
    // ascending. Draw-and-retry is fine for the label counts used here
    // (k is small relative to the range).
    std::vector<int> sample_distinct(int lo, int hi, int k);

private:
    uint64_t state_;
};

}  // namespace tempsep

#endif
