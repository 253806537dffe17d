#ifndef TFSCREEN_RNG_HPP
#define TFSCREEN_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tfscreen {

/// Deterministic random source built on std::mt19937_64, whose output
/// sequence is fixed by the C++ standard and therefore reproduces across
/// platforms and standard libraries. All derived draws (bounded integers,
/// uniforms, normals, Poisson) are implemented here rather than with
/// std::*_distribution, which is not portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Unbiased integer in [0, bound) via rejection sampling.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Standard normal via Marsaglia's polar method.
    double normal();

    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    /// Poisson draw by Knuth's product-of-uniforms method. Exact and
    /// deterministic; cost grows linearly with the mean, which stays small
    /// (< ~50) in every use here.
    std::uint32_t poisson(double mean);

    /// Sample k distinct values from [0, n) (Floyd's algorithm), returned sorted.
    std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k);

    /// Derive a child seed from a parent seed and a tag. Used to give each
    /// GSEA term and each simulated cell its own stream, so results do not
    /// depend on scheduling order.
    static std::uint64_t mix(std::uint64_t seed, std::string_view tag);
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t salt);

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace tfscreen

#endif
