#include "tfscreen/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace tfscreen {

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    // Rejection zone keeps the modulo unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
        r = gen_();
    } while (r >= limit);
    return r % bound;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
}

std::uint32_t Rng::poisson(double mean) {
    if (mean < 0.0 || !std::isfinite(mean)) throw std::invalid_argument("poisson: mean must be finite and non-negative");
    if (mean == 0.0) return 0;
    const double threshold = std::exp(-mean);
    std::uint32_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform01();
    } while (p > threshold);
    return k - 1;
}

std::vector<std::uint32_t> Rng::sample_without_replacement(std::uint32_t n, std::uint32_t k) {
    if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
    std::unordered_set<std::uint32_t> chosen;
    chosen.reserve(k * 2);
    for (std::uint32_t j = n - k; j < n; ++j) {
        const auto t = static_cast<std::uint32_t>(uniform_below(j + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint32_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t Rng::mix(std::uint64_t seed, std::string_view tag) {
    return splitmix64(seed ^ fnv1a64(tag));
}

std::uint64_t Rng::mix(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ splitmix64(salt));
}

}  // namespace tfscreen
