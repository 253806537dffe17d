#include "tfscreen/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tfscreen {

double normal_two_sided_p(double z) {
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

namespace {

struct PooledRanks {
    double rank_sum_a = 0.0;  // sum of ranks of sample a
    double tie_term = 0.0;    // sum over tie groups of t^3 - t
};

RankSumResult finish_rank_sum(double rank_sum_a, double tie_term, std::size_t n_a,
                              std::size_t n_b, bool tie_correct) {
    const double na = static_cast<double>(n_a);
    const double nb = static_cast<double>(n_b);
    const double n = na + nb;
    const double mu = na * (n + 1.0) / 2.0;
    double var;
    if (tie_correct) {
        var = (na * nb / 12.0) * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    } else {
        var = na * nb * (n + 1.0) / 12.0;
    }
    RankSumResult r;
    if (var <= 0.0 || !(n > 1.0)) {
        r.z = 0.0;
        r.p = 1.0;
        return r;
    }
    r.z = (rank_sum_a - mu) / std::sqrt(var);
    r.p = normal_two_sided_p(r.z);
    return r;
}

}  // namespace

RankSumResult rank_sum_z(std::span<const double> a, std::span<const double> b, bool tie_correct) {
    if (a.empty() || b.empty()) throw std::invalid_argument("rank_sum_z: empty group");
    const std::size_t n = a.size() + b.size();
    // Sort indices of the pooled sample; membership in `a` is index < a.size().
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    auto value_of = [&](std::uint32_t i) { return i < a.size() ? a[i] : b[i - a.size()]; };
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t x, std::uint32_t y) { return value_of(x) < value_of(y); });

    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && value_of(order[j + 1]) == value_of(order[i])) ++j;
        const double t = static_cast<double>(j - i + 1);
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (order[k] < a.size()) rank_sum_a += avg_rank;
        }
        tie_term += t * t * t - t;
        i = j + 1;
    }
    return finish_rank_sum(rank_sum_a, tie_term, a.size(), b.size(), tie_correct);
}

RankSumResult rank_sum_z_sparse(std::span<const double> nonzero_a, std::size_t n_a,
                                std::span<const double> nonzero_b, std::size_t n_b,
                                bool tie_correct) {
    if (n_a == 0 || n_b == 0) throw std::invalid_argument("rank_sum_z_sparse: empty group");
    if (nonzero_a.size() > n_a || nonzero_b.size() > n_b)
        throw std::invalid_argument("rank_sum_z_sparse: more nonzero values than sample size");

    const std::size_t zeros_a = n_a - nonzero_a.size();
    const std::size_t zeros_b = n_b - nonzero_b.size();
    const std::size_t zeros = zeros_a + zeros_b;

    // Implicit zeros occupy ranks 1..zeros as a single tie group.
    double rank_sum_a = static_cast<double>(zeros_a) * (static_cast<double>(zeros) + 1.0) / 2.0;
    double tie_term = 0.0;
    if (zeros > 1) {
        const double t = static_cast<double>(zeros);
        tie_term += t * t * t - t;
    }

    const std::size_t m = nonzero_a.size() + nonzero_b.size();
    std::vector<std::pair<double, bool>> vals;  // (value, in_a)
    vals.reserve(m);
    for (double v : nonzero_a) vals.emplace_back(v, true);
    for (double v : nonzero_b) vals.emplace_back(v, false);
    std::sort(vals.begin(), vals.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    std::size_t i = 0;
    while (i < m) {
        std::size_t j = i;
        while (j + 1 < m && vals[j + 1].first == vals[i].first) ++j;
        const double t = static_cast<double>(j - i + 1);
        const double avg_rank =
            static_cast<double>(zeros) + (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (vals[k].second) rank_sum_a += avg_rank;
        }
        tie_term += t * t * t - t;
        i = j + 1;
    }
    return finish_rank_sum(rank_sum_a, tie_term, n_a, n_b, tie_correct);
}

std::vector<double> bh_adjust(std::span<const double> p) {
    const std::size_t m = p.size();
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("bh_adjust: p outside [0,1]");
    }
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t x, std::uint32_t y) { return p[x] < p[y]; });
    std::vector<double> q(m, 0.0);
    double running = 1.0;
    for (std::size_t i = m; i-- > 0;) {
        const double scaled = p[order[i]] * static_cast<double>(m) / static_cast<double>(i + 1);
        running = std::min(running, scaled);
        q[order[i]] = running;
    }
    return q;
}

double log2fc(double mean_a, double mean_b, double eps) {
    return std::log2((std::expm1(mean_a) + eps) / (std::expm1(mean_b) + eps));
}

double hypergeom_sf(std::uint64_t k, std::uint64_t K, std::uint64_t n, std::uint64_t N) {
    if (K > N || n > N) throw std::invalid_argument("hypergeom_sf: K and n must not exceed N");
    const std::uint64_t hi = std::min(K, n);
    if (k == 0) return 1.0;
    if (k > hi) return 0.0;
    // Support starts at max(0, n + K - N).
    const std::uint64_t lo = (n + K > N) ? n + K - N : 0;
    const std::uint64_t start = std::max(k, lo);
    if (k < lo) return 1.0;

    auto lchoose = [](std::uint64_t a, std::uint64_t b) {
        return std::lgamma(static_cast<double>(a) + 1.0) - std::lgamma(static_cast<double>(b) + 1.0) -
               std::lgamma(static_cast<double>(a - b) + 1.0);
    };
    // Anchor term at i = start, then extend with the exact ratio recurrence
    // P(i+1)/P(i) = (K-i)(n-i) / ((i+1)(N-K-n+i+1)).
    double term = std::exp(lchoose(K, start) + lchoose(N - K, n - start) - lchoose(N, n));
    double sum = term;
    for (std::uint64_t i = start; i < hi; ++i) {
        const double num = static_cast<double>(K - i) * static_cast<double>(n - i);
        const double den = static_cast<double>(i + 1) * static_cast<double>(N - K - n + i + 1);
        term *= num / den;
        sum += term;
    }
    return std::min(sum, 1.0);
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    // Continued fraction (Lentz), using the symmetry transform for convergence.
    auto cont_frac = [](double a_, double b_, double x_) {
        const double tiny = 1e-300;
        double qab = a_ + b_;
        double qap = a_ + 1.0;
        double qam = a_ - 1.0;
        double c = 1.0;
        double d = 1.0 - qab * x_ / qap;
        if (std::abs(d) < tiny) d = tiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= 300; ++m) {
            const double m2 = 2.0 * m;
            double aa = m * (b_ - m) * x_ / ((qam + m2) * (a_ + m2));
            d = 1.0 + aa * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + aa / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            h *= d * c;
            aa = -(a_ + m) * (qab + m) * x_ / ((a_ + m2) * (qap + m2));
            d = 1.0 + aa * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + aa / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < 3e-16) break;
        }
        return h;
    };
    const double ln_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - ln_beta);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * cont_frac(a, b, x) / a;
    }
    return 1.0 - front * cont_frac(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (df <= 0.0) throw std::invalid_argument("student_t_two_sided_p: df must be positive");
    if (!std::isfinite(t)) return 0.0;
    const double x = df / (df + t * t);
    return incomplete_beta(df / 2.0, 0.5, x);
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t x, std::uint32_t y) { return values[x] < values[y]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace tfscreen
