#ifndef OPCONVEX_RANDOM_HPP
#define OPCONVEX_RANDOM_HPP

#include <cstdint>
#include <random>

namespace opconvex {

/// Seeded generator with an explicit bits-to-double mapping, so sweep
/// samples are byte-identical across platforms (std::uniform_real_distribution
/// is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform draw in [lo, hi) with 53-bit resolution.
    double uniform(double lo, double hi) {
        const double unit = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

    /// Uniform integer in [lo, hi] by rejection-free modulo over a
    /// 64-bit draw; bias is < 2^-32 for the small ranges used here.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(gen_() % span);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace opconvex

#endif
