#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "viviani/errors.hpp"
#include "viviani/hyperplane.hpp"
#include "viviani/vector.hpp"

namespace viviani {

// SplitMix64 (Steele, Lea, Flood 2014). State advances by 0x9E3779B97F4A7C15
// and each output is the finalizer
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z ^ (z >> 31)
// Doubles in [0, 1) take the top 53 bits: (next() >> 11) * 2^-53.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double next_double() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct SampleStats {
    std::size_t count = 0;
    double min = 0.0;
    double max = 0.0;
    double spread = 0.0;
};

// Points in the box [lo, hi]^n, drawn point by point, coordinate by
// coordinate: coordinate j of point i is lo + (hi - lo) * u with u the
// (i * n + j)-th double of SplitMix64(seed).
inline std::vector<VectorN> sample_box(std::size_t dim, std::size_t count, std::uint64_t seed, double lo, double hi) {
    if (dim == 0) throw Error(ErrorCode::ZeroDimension, "sampling dimension must be positive");
    if (!(lo < hi)) throw Error(ErrorCode::DomainError, "sampling box needs lo < hi");
    SplitMix64 rng(seed);
    std::vector<VectorN> out;
    out.reserve(count);
    std::vector<double> c(dim);
    for (std::size_t i = 0; i < count; ++i) {
        for (double& x : c) x = lo + (hi - lo) * rng.next_double();
        out.emplace_back(c);
    }
    return out;
}

// Range of v over `count` seeded points of the box; the spread is zero for a
// Viviani set up to rounding.
inline SampleStats sample_viviani_value(const HyperplaneSet& set, std::size_t count, std::uint64_t seed, double lo,
                                        double hi) {
    if (count == 0) throw Error(ErrorCode::DomainError, "sample count must be positive");
    SampleStats s;
    s.count = count;
    bool first = true;
    for (const auto& p : sample_box(set.dim(), count, seed, lo, hi)) {
        const double v = viviani_value(p, set);
        s.min = first ? v : std::min(s.min, v);
        s.max = first ? v : std::max(s.max, v);
        first = false;
    }
    s.spread = s.max - s.min;
    return s;
}

}  // namespace viviani
