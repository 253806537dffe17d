#ifndef TFSCREEN_STATS_HPP
#define TFSCREEN_STATS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace tfscreen {

struct RankSumResult {
    double z = 0.0;
    double p = 1.0;
};

/// Wilcoxon (Mann-Whitney) rank-sum test between two samples, normal
/// approximation, no continuity correction. Ties receive average ranks.
/// With tie_correct the variance is reduced by the standard tie term
///   sigma^2 = (na*nb/12) * ((n+1) - sum(t^3 - t)/(n*(n-1)))
/// otherwise sigma^2 = na*nb*(n+1)/12. A degenerate pooled sample
/// (sigma = 0) yields z = 0, p = 1.
RankSumResult rank_sum_z(std::span<const double> a, std::span<const double> b,
                         bool tie_correct = true);

/// Same test on sparse non-negative samples: only the strictly positive
/// values are passed, together with the total sample sizes; the implicit
/// zeros form one tie group at the bottom of the ranking. Must agree with
/// rank_sum_z on the densified inputs (property-tested).
RankSumResult rank_sum_z_sparse(std::span<const double> nonzero_a, std::size_t n_a,
                                std::span<const double> nonzero_b, std::size_t n_b,
                                bool tie_correct = true);

/// Benjamini-Hochberg step-up adjustment. Input order is preserved.
std::vector<double> bh_adjust(std::span<const double> p);

/// log2 fold change between two log1p-scale means:
/// log2((expm1(mean_a)+eps) / (expm1(mean_b)+eps)).
double log2fc(double mean_a, double mean_b, double eps = 1e-9);

/// Upper tail P(X >= k) of the hypergeometric distribution with K marked
/// elements in a universe of N, drawing n. Terms are anchored at i = k via
/// log-gamma and extended with the exact ratio recurrence.
double hypergeom_sf(std::uint64_t k, std::uint64_t K, std::uint64_t n, std::uint64_t N);

/// Two-sided normal tail: P(|Z| >= |z|).
double normal_two_sided_p(double z);

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Two-sided Student-t tail probability with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// Average ranks (1-based) of a sample; ties get the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace tfscreen

#endif
