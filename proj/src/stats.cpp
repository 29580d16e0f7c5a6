#include "castkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "castkit/errors.hpp"

namespace castkit {

namespace {

struct Moments {
    double mean = 0.0;
    double m2 = 0.0; // central moments (population normalization)
    double m3 = 0.0;
    double m4 = 0.0;
};

Moments central_moments(const std::vector<double>& xs) {
    Moments m;
    const double n = static_cast<double>(xs.size());
    for (double x : xs) m.mean += x;
    m.mean /= n;
    for (double x : xs) {
        double d = x - m.mean;
        double d2 = d * d;
        m.m2 += d2;
        m.m3 += d2 * d;
        m.m4 += d2 * d2;
    }
    m.m2 /= n;
    m.m3 /= n;
    m.m4 /= n;
    return m;
}

// Plain third standardized moment g1 = m3 / m2^1.5; 0 for degenerate samples.
double skewness_g1(const std::vector<double>& xs) {
    Moments m = central_moments(xs);
    if (m.m2 <= 0.0) return 0.0;
    return m.m3 / std::pow(m.m2, 1.5);
}

} // namespace

double quantile(std::vector<double> samples, double q) {
    if (samples.empty()) throw std::invalid_argument("quantile: empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q outside [0, 1]");
    std::sort(samples.begin(), samples.end());
    double h = q * static_cast<double>(samples.size() - 1);
    std::size_t lo = static_cast<std::size_t>(h);
    std::size_t hi = std::min(lo + 1, samples.size() - 1);
    return samples[lo] + (h - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

SampleSummary summarize(const std::vector<double>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("summarize: need n >= 2");
    const std::size_t n = samples.size();
    const double nd = static_cast<double>(n);
    Moments m = central_moments(samples);

    SampleSummary s;
    s.n = n;
    s.mean = m.mean;
    s.std = std::sqrt(m.m2 * nd / (nd - 1.0));
    s.pct05 = quantile(samples, 0.05);
    s.pct95 = quantile(samples, 0.95);
    if (m.m2 > 0.0) {
        if (n >= 3) {
            double g1 = m.m3 / std::pow(m.m2, 1.5);
            s.skewness = g1 * std::sqrt(nd * (nd - 1.0)) / (nd - 2.0);
        }
        double kp = m.m4 / (m.m2 * m.m2);
        s.kurtosis_pearson = kp;
        s.excess_kurtosis = kp - 3.0;
    }
    return s;
}

int doane_bin_count(const std::vector<double>& samples) {
    if (samples.size() < 3) throw std::invalid_argument("doane_bin_count: need n >= 3");
    const double n = static_cast<double>(samples.size());
    double g1 = skewness_g1(samples);
    double sigma_g1 = std::sqrt(6.0 * (n - 2.0) / ((n + 1.0) * (n + 3.0)));
    double k = 1.0 + std::log2(n) + std::log2(1.0 + std::abs(g1) / sigma_g1);
    long rounded = std::lround(k);
    return static_cast<int>(std::max(1L, rounded));
}

ErrorSummary error_metrics(const std::vector<double>& run_fitnesses) {
    if (run_fitnesses.empty()) throw std::invalid_argument("error_metrics: empty input");
    ErrorSummary e;
    e.n = run_fitnesses.size();
    e.sum = 0.0;
    e.max = run_fitnesses.front();
    e.min = run_fitnesses.front();
    for (double v : run_fitnesses) {
        e.sum += v;
        e.max = std::max(e.max, v);
        e.min = std::min(e.min, v);
    }
    e.expected_value = e.sum / static_cast<double>(e.n);
    double ss = 0.0;
    for (double v : run_fitnesses) {
        double d = v - e.expected_value;
        ss += d * d;
    }
    e.std = e.n > 1 ? std::sqrt(ss / static_cast<double>(e.n - 1)) : 0.0;
    return e;
}

Histogram histogram(const std::vector<double>& samples, int bins) {
    if (samples.empty()) throw std::invalid_argument("histogram: empty sample");
    if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
    auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    double lo = *lo_it, hi = *hi_it;

    Histogram h;
    if (lo == hi) {
        h.edges = {lo, hi};
        h.counts = {samples.size()};
        return h;
    }
    h.edges.resize(static_cast<std::size_t>(bins) + 1);
    double width = (hi - lo) / bins;
    for (int i = 0; i <= bins; ++i)
        h.edges[static_cast<std::size_t>(i)] = lo + width * i;
    h.edges.back() = hi;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (double x : samples) {
        auto idx = static_cast<long>((x - lo) / width); // right-open; last bin closed
        idx = std::clamp(idx, 0L, static_cast<long>(bins - 1));
        ++h.counts[static_cast<std::size_t>(idx)];
    }
    return h;
}

} // namespace castkit
