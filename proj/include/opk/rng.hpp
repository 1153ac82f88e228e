#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace opk {

// SplitMix64 (Steele, Lea, Flood 2014). Counter-based: the state advances by a
// fixed odd constant and each output is a bijective mix of the counter, so
// split() can hand out independent streams. Chosen because the sequence is
// fully specified by the algorithm, unlike std::uniform_int_distribution,
// which keeps `gen --seed` / `check --seed` output byte-reproducible across
// platforms.
class SplitMix64 {
 public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Independent child stream; advancing the child never touches the parent.
    SplitMix64 split() { return SplitMix64(next()); }

    // Uniform in [lo, hi], inclusive. Rejection-free multiply-shift would be
    // overkill at desk scale; modulo bias over a 64-bit source is < 2^-50 for
    // the tiny ranges used here and keeps the sequence easy to reproduce.
    int uniform_int(int lo, int hi) {
        if (hi <= lo) return lo;
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    bool coin(double p_num, double p_den) {
        // p_num/p_den probability using integer arithmetic only.
        return static_cast<double>(next() % 1000000ULL) * p_den < p_num * 1000000.0;
    }

    // Distinct sorted sample of `count` values from [0, n).
    std::vector<int> sample_without_replacement(int n, int count);

 private:
    std::uint64_t state_;
};

inline std::vector<int> SplitMix64::sample_without_replacement(int n, int count) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    if (count > n) count = n;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const int j = uniform_int(i, n - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        out.push_back(pool[static_cast<std::size_t>(i)]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace opk
