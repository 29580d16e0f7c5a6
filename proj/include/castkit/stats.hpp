#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace castkit {

/// Moments and percentiles of one scalar sample.
/// Shape statistics are absent for degenerate samples (zero variance or too
/// few points) instead of being reported as NaN.
struct SampleSummary {
    double mean = 0.0;
    double std = 0.0;   ///< sample standard deviation (n-1)
    double pct05 = 0.0;
    double pct95 = 0.0;
    std::optional<double> skewness;         ///< adjusted Fisher-Pearson coefficient
    std::optional<double> kurtosis_pearson; ///< m4/m2^2 (normal = 3)
    std::optional<double> excess_kurtosis;  ///< kurtosis_pearson - 3
    std::size_t n = 0;
};

/// The five per-algorithm error metrics over replicate fitness values.
struct ErrorSummary {
    double sum = 0.0;
    double expected_value = 0.0;
    double std = 0.0;
    double max = 0.0;
    double min = 0.0;
    std::size_t n = 0;
};

struct Histogram {
    std::vector<double> edges;       ///< bins + 1 values; equal width over [min, max]
    std::vector<std::size_t> counts; ///< right-open bins, last bin closed
};

/// Quantile by linear interpolation between closest order statistics,
/// q in [0, 1].
double quantile(std::vector<double> samples, double q);

/// Standard sample statistics; requires n >= 2.
SampleSummary summarize(const std::vector<double>& samples);

/// Doane's histogram rule: 1 + log2(n) + log2(1 + |g1|/sigma_g1), rounded to
/// the nearest integer, never below 1. Requires n >= 3.
int doane_bin_count(const std::vector<double>& samples);

/// Sum / mean / sample std / max / min of replicate fitness values.
ErrorSummary error_metrics(const std::vector<double>& run_fitnesses);

/// Equal-width histogram. A degenerate range (min == max) collapses to a
/// single bin holding every sample.
Histogram histogram(const std::vector<double>& samples, int bins);

} // namespace castkit
