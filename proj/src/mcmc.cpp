#include "castkit/mcmc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "castkit/errors.hpp"

namespace castkit {

void ChainConfig::validate() const {
    if (prior_mean.empty() || prior_mean.size() != prior_std.size())
        throw config_error("mcmc: prior_mean and prior_std must be non-empty and equal length");
    for (double s : prior_std)
        if (!(s > 0.0)) throw config_error("mcmc: prior_std must be > 0");
    if (!(meas_std > 0.0)) throw config_error("mcmc: meas_std must be > 0");
    if (!(step_scale > 0.0)) throw config_error("mcmc: step_scale must be > 0");
    if (n_states < 2) throw config_error("mcmc: n_states must be >= 2");
    if (burn_in < 0 || burn_in >= n_states)
        throw config_error("mcmc: burn_in must be in [0, n_states)");
    if (start_scales.empty()) throw config_error("mcmc: start_scales must not be empty");
    for (double s : start_scales)
        if (!(s > 0.0)) throw config_error("mcmc: start_scales must be > 0");
}

double MarkovChain::acceptance_rate() const {
    if (accepted.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::uint8_t a : accepted) hits += a;
    return static_cast<double>(hits) / static_cast<double>(accepted.size());
}

double log_prior(const std::vector<double>& theta, const ChainConfig& config) {
    if (theta.size() != config.prior_mean.size())
        throw std::invalid_argument("log_prior: theta dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        double z = (theta[i] - config.prior_mean[i]) / config.prior_std[i];
        acc += z * z;
    }
    return -0.5 * acc;
}

double log_likelihood(const std::vector<double>& theta, const FitnessSpec& spec,
                      double meas_std) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (theta.size() != 2) throw std::invalid_argument("log_likelihood: theta must be (A, B)");
    if (!std::isfinite(theta[0]) || !std::isfinite(theta[1]) || theta[0] < 0.0)
        return kNegInf;

    IhtcParams params;
    params.A = theta[0];
    params.B = theta[1];

    MeshSpec mesh = spec.mesh;
    mesh.sample_dt = 0.0;
    ThermalHistory sim;
    try {
        sim = simulate(spec.alloy, mesh, spec.boundary, params,
                       spec.experiment.history.positions);
    } catch (const numerical_error&) {
        return kNegInf;
    }

    const auto& exp_h = spec.experiment.history;
    double ss = 0.0;
    for (std::size_t p = 0; p < exp_h.positions.size(); ++p)
        for (std::size_t k = 0; k < exp_h.times.size(); ++k) {
            double r = sample_at(sim, exp_h.positions[p], exp_h.times[k]) -
                       exp_h.temperatures[p][k];
            ss += r * r;
        }
    return -0.5 * ss / (meas_std * meas_std);
}

LogDensity make_log_posterior(const FitnessSpec& spec, const ChainConfig& config) {
    return [spec, config](const std::vector<double>& theta) {
        return log_prior(theta, config) + log_likelihood(theta, spec, config.meas_std);
    };
}

bool mh_accept(double log_post_new, double log_post_old, SplitRng& rng) {
    return rng.uniform01() < std::exp(log_post_new - log_post_old);
}

std::vector<double> propose(const std::vector<double>& theta_prev, double step_scale,
                            SplitRng& rng) {
    std::vector<double> theta(theta_prev.size());
    for (std::size_t i = 0; i < theta.size(); ++i)
        theta[i] = theta_prev[i] + step_scale * rng.normal01() * theta_prev[i];
    return theta;
}

MarkovChain run_chain(const LogDensity& log_posterior, const std::vector<double>& start,
                      const ChainConfig& config, std::uint64_t chain_seed) {
    config.validate();
    if (start.empty()) throw std::invalid_argument("run_chain: empty start point");
    if (!log_posterior) throw std::invalid_argument("run_chain: empty posterior");

    MarkovChain chain;
    chain.dim = start.size();
    chain.seed = chain_seed;
    chain.states.reserve(chain.dim * static_cast<std::size_t>(config.n_states));
    chain.log_posts.reserve(config.n_states);
    chain.accepted.reserve(config.n_states);

    SplitRng rng(chain_seed);
    std::vector<double> current = start;
    double lp_current = log_posterior(current);
    chain.states.insert(chain.states.end(), current.begin(), current.end());
    chain.log_posts.push_back(lp_current);
    chain.accepted.push_back(1);

    for (int i = 1; i < config.n_states; ++i) {
        std::vector<double> cand = propose(current, config.step_scale, rng);
        double lp_cand = log_posterior(cand);
        bool take = mh_accept(lp_cand, lp_current, rng);
        if (take) {
            current = cand;
            lp_current = lp_cand;
        }
        chain.states.insert(chain.states.end(), current.begin(), current.end());
        chain.log_posts.push_back(lp_current);
        chain.accepted.push_back(take ? 1 : 0);
    }
    return chain;
}

std::vector<MarkovChain> run_chains(const FitnessSpec& spec, const ChainConfig& config) {
    config.validate();
    spec.validate();
    LogDensity posterior = make_log_posterior(spec, config);
    SplitRng root(config.seed);

    std::vector<MarkovChain> chains(config.start_scales.size());
    for (std::size_t c = 0; c < chains.size(); ++c) {
        std::vector<double> start(config.prior_mean.size());
        for (std::size_t i = 0; i < start.size(); ++i)
            start[i] = config.start_scales[c] * config.prior_mean[i];
        std::uint64_t chain_seed = root.sub(c + 1).next_u64();
        chains[c] = run_chain(posterior, start, config, chain_seed);
    }
    return chains;
}

int suggested_burn_in(const MarkovChain& chain) {
    if (chain.log_posts.empty()) return 0;
    double best = -std::numeric_limits<double>::infinity();
    for (double lp : chain.log_posts) best = std::max(best, lp);
    double tolerance = 0.01 * std::fabs(best);
    double running = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < chain.log_posts.size(); ++i) {
        running = std::max(running, chain.log_posts[i]);
        if (std::fabs(running - best) <= tolerance) return static_cast<int>(i);
    }
    return static_cast<int>(chain.log_posts.size()) - 1;
}

PosteriorSummary pool_chains(const std::vector<MarkovChain>& chains, int burn_in) {
    return pool_chains(chains, std::vector<int>(chains.size(), burn_in));
}

PosteriorSummary pool_chains(const std::vector<MarkovChain>& chains,
                             const std::vector<int>& burn_ins) {
    if (chains.empty()) throw std::invalid_argument("pool_chains: no chains");
    if (burn_ins.size() != chains.size())
        throw std::invalid_argument("pool_chains: one burn-in per chain required");
    std::size_t dim = chains.front().dim;
    for (const auto& chain : chains)
        if (chain.dim != dim) throw std::invalid_argument("pool_chains: mixed dimensions");

    PosteriorSummary summary;
    for (std::size_t p = 0; p < dim; ++p) {
        std::vector<double> pooled;
        for (std::size_t c = 0; c < chains.size(); ++c) {
            int drop = burn_ins[c];
            if (drop < 0) throw std::invalid_argument("pool_chains: negative burn-in");
            for (std::size_t i = static_cast<std::size_t>(drop); i < chains[c].length(); ++i)
                pooled.push_back(chains[c].state(i)[p]);
        }
        if (pooled.size() < 2)
            throw std::invalid_argument("pool_chains: burn-in leaves fewer than two states");
        SampleSummary s = summarize(pooled);
        summary.expected_value.push_back(s.mean);
        summary.std.push_back(s.std);
        summary.pct05.push_back(s.pct05);
        summary.pct95.push_back(s.pct95);
        summary.kurtosis.push_back(
            s.kurtosis_pearson ? *s.kurtosis_pearson : std::numeric_limits<double>::quiet_NaN());
        summary.skewness.push_back(
            s.skewness ? *s.skewness : std::numeric_limits<double>::quiet_NaN());
        summary.n_pooled = pooled.size();
    }
    return summary;
}

} // namespace castkit
