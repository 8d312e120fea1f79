// Deterministic 64-bit generator (splitmix64).  Passed by reference as an
// explicit value; never hidden shared state.  Per-trial streams are derived
// with derive(seed, index) so trial batches can run in any order.

#pragma once

#include <cstdint>
#include <vector>

namespace qinfo {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // One draw, inverse-CDF over an (unnormalized is not allowed) distribution.
    std::size_t sample(const std::vector<double>& probs) {
        const double u = next_double();
        double acc = 0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return i;
        }
        return probs.size() - 1;  // guard against rounding at the top end
    }

    std::size_t next_below(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    static Rng derive(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        mix.next_u64();
        return Rng(mix.next_u64());
    }

private:
    std::uint64_t state_;
};

}  // namespace qinfo
