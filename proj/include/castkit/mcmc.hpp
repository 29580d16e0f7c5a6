#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "castkit/inverse.hpp"
#include "castkit/rng.hpp"
#include "castkit/stats.hpp"

namespace castkit {

/// Settings for one family of Metropolis-Hastings chains over (A, B).
struct ChainConfig {
    std::vector<double> prior_mean{6430.0, -0.153};
    /// The source study never states its prior widths; these defaults are
    /// weakly informative so the data dominates. Override per problem.
    std::vector<double> prior_std{2000.0, 0.1};
    double meas_std = 5.0;      ///< measurement standard deviation (K)
    double step_scale = 0.005;  ///< proposal: theta' = theta + step_scale * n * theta
    int n_states = 40000;
    int burn_in = 2000;         ///< states dropped from each chain before pooling
    bool auto_burn_in = false;  ///< replace burn_in with suggested_burn_in() per chain
    std::vector<double> start_scales{0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6};
    std::uint64_t seed = 1;

    void validate() const;
};

/// One realized chain. States are stored row-major (n_states x dim).
/// accepted[i] marks state i as a fresh acceptance; state 0 counts as
/// accepted, so a rejection always repeats the previous row bitwise.
struct MarkovChain {
    std::size_t dim = 0;
    std::vector<double> states;
    std::vector<double> log_posts;
    std::vector<std::uint8_t> accepted;
    std::uint64_t seed = 0;

    std::size_t length() const { return dim == 0 ? 0 : states.size() / dim; }
    const double* state(std::size_t i) const { return states.data() + i * dim; }
    double acceptance_rate() const;
};

/// Pooled statistics per parameter, mirroring the posterior-table schema.
struct PosteriorSummary {
    std::vector<double> expected_value;
    std::vector<double> std;
    std::vector<double> pct05;
    std::vector<double> pct95;
    std::vector<double> kurtosis; ///< Pearson flavor (normal = 3)
    std::vector<double> skewness;
    std::size_t n_pooled = 0;
};

using LogDensity = std::function<double(const std::vector<double>&)>;

/// Independent Gaussian log prior, -1/2 sum ((theta-mu)/sigma)^2.
double log_prior(const std::vector<double>& theta, const ChainConfig& config);

/// -1/2 sum(residual^2)/meas_std^2 over every probe sample; -inf if the
/// forward solve diverges (the proposal is then rejected automatically).
double log_likelihood(const std::vector<double>& theta, const FitnessSpec& spec,
                      double meas_std);

/// log_prior + log_likelihood as a reusable callable.
LogDensity make_log_posterior(const FitnessSpec& spec, const ChainConfig& config);

/// Accept with probability min(1, exp(log_post_new - log_post_old)).
bool mh_accept(double log_post_new, double log_post_old, SplitRng& rng);

/// Multiplicative random walk: theta_i' = theta_i + step_scale * n_i * theta_i
/// with a fresh standard normal per component.
std::vector<double> propose(const std::vector<double>& theta_prev, double step_scale,
                            SplitRng& rng);

/// Standard MH loop from `start`; records every state including rejections.
MarkovChain run_chain(const LogDensity& log_posterior, const std::vector<double>& start,
                      const ChainConfig& config, std::uint64_t chain_seed);

/// All configured start scales against the solver-backed posterior.
std::vector<MarkovChain> run_chains(const FitnessSpec& spec, const ChainConfig& config);

/// First state whose running-best log posterior is within 1% of the chain's
/// final best, a cheap settle detector used when auto_burn_in is set.
int suggested_burn_in(const MarkovChain& chain);

/// Drop burn_in states per chain, concatenate, summarize per parameter.
PosteriorSummary pool_chains(const std::vector<MarkovChain>& chains, int burn_in);

/// Same, with an individual burn-in per chain (auto_burn_in mode).
PosteriorSummary pool_chains(const std::vector<MarkovChain>& chains,
                             const std::vector<int>& burn_ins);

} // namespace castkit
