#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "castkit/errors.hpp"
#include "castkit/mcmc.hpp"

using namespace castkit;

namespace {

const AlloyProperties kAlloy{};
const BoundarySpec kBoundary{300.0, 973.0};
const IhtcParams kTruth{6301.0, -0.147, 1.0};
const std::vector<double> kProbes{0.004, 0.008, 0.012};

FitnessSpec make_spec(double noise_std, std::uint64_t seed) {
    MeshSpec mesh{0.06, 24, 0.1, 30.0, 1.0};
    return {kAlloy, mesh, kBoundary,
            synthesize_experiment(kTruth, kAlloy, mesh, kBoundary, kProbes, noise_std, seed)};
}

// Independent Gaussian density with known moments, no solver involved.
LogDensity gaussian_target(std::vector<double> mu, std::vector<double> sigma) {
    return [mu, sigma](const std::vector<double>& theta) {
        double acc = 0.0;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            double z = (theta[i] - mu[i]) / sigma[i];
            acc += z * z;
        }
        return -0.5 * acc;
    };
}

} // namespace

TEST_CASE("log prior is zero at the mean and quadratic away from it") {
    ChainConfig cfg;
    CHECK(log_prior(cfg.prior_mean, cfg) == 0.0);

    std::vector<double> one_sigma{cfg.prior_mean[0] + cfg.prior_std[0], cfg.prior_mean[1]};
    CHECK(log_prior(one_sigma, cfg) == doctest::Approx(-0.5).epsilon(1e-14));

    std::vector<double> displaced{cfg.prior_mean[0] + cfg.prior_std[0],
                                  cfg.prior_mean[1] + 2.0 * cfg.prior_std[1]};
    CHECK(log_prior(displaced, cfg) == doctest::Approx(-2.5).epsilon(1e-12));

    CHECK_THROWS_AS(log_prior({1.0}, cfg), std::invalid_argument);
}

TEST_CASE("log likelihood peaks at the generating parameters") {
    FitnessSpec spec = make_spec(0.0, 1);
    CHECK(log_likelihood({kTruth.A, kTruth.B}, spec, 5.0) == 0.0);

    double off = log_likelihood({5500.0, -0.12}, spec, 5.0);
    CHECK(off < -1.0);
    CHECK(std::isfinite(off));

    // Doubling the measurement noise scales the log likelihood by 1/4.
    double off_wide = log_likelihood({5500.0, -0.12}, spec, 10.0);
    CHECK(off == doctest::Approx(4.0 * off_wide).epsilon(1e-12));

    CHECK(log_likelihood({-1.0, -0.12}, spec, 5.0) ==
          -std::numeric_limits<double>::infinity());
    CHECK(log_likelihood({std::nan(""), -0.12}, spec, 5.0) ==
          -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(log_likelihood({1.0}, spec, 5.0), std::invalid_argument);
}

TEST_CASE("log likelihood equals the residual sum computed independently") {
    FitnessSpec spec = make_spec(5.0, 17);
    std::vector<double> theta{6000.0, -0.13};

    MeshSpec mesh = spec.mesh;
    mesh.sample_dt = 0.0;
    ThermalHistory sim =
        simulate(spec.alloy, mesh, spec.boundary, {theta[0], theta[1], 1.0}, kProbes);
    const auto& exp_h = spec.experiment.history;
    double sum_sq = 0.0;
    std::vector<double> trace(exp_h.times.size());
    for (std::size_t p = 0; p < kProbes.size(); ++p) {
        for (std::size_t k = 0; k < exp_h.times.size(); ++k)
            trace[k] = sample_at(sim, kProbes[p], exp_h.times[k]);
        double rmsd = profile_rmsd(trace, exp_h.temperatures[p]);
        sum_sq += rmsd * rmsd * static_cast<double>(exp_h.times.size());
    }
    CHECK(log_likelihood(theta, spec, 5.0) ==
          doctest::Approx(-0.5 * sum_sq / 25.0).epsilon(1e-12));
}

TEST_CASE("acceptance rule") {
    SplitRng rng(1);
    for (int i = 0; i < 1000; ++i) {
        CHECK(mh_accept(-1.0, -5.0, rng));  // uphill
        CHECK(mh_accept(-3.0, -3.0, rng));  // level
    }
    // A fixed drop of 1 accepts with probability exp(-1).
    SplitRng rng2(2);
    int hits = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i)
        if (mh_accept(-4.0, -3.0, rng2)) ++hits;
    double rate = static_cast<double>(hits) / trials;
    CHECK(std::fabs(rate - std::exp(-1.0)) < 0.01);
}

TEST_CASE("proposals scale with the current state") {
    std::vector<double> theta{6301.0, -0.147};
    SplitRng rng(3);
    const int n = 100000;
    std::vector<double> sum(2, 0.0), sum_sq(2, 0.0);
    for (int i = 0; i < n; ++i) {
        std::vector<double> cand = propose(theta, 0.005, rng);
        for (int j = 0; j < 2; ++j) {
            double d = cand[j] - theta[j];
            sum[j] += d;
            sum_sq[j] += d * d;
        }
    }
    for (int j = 0; j < 2; ++j) {
        double expected_std = 0.005 * std::fabs(theta[j]);
        double mean = sum[j] / n;
        double std_dev = std::sqrt((sum_sq[j] - sum[j] * sum[j] / n) / (n - 1));
        CHECK(std::fabs(mean) < 3.0 * expected_std / std::sqrt(static_cast<double>(n)) * 3.0);
        CHECK(std_dev == doctest::Approx(expected_std).epsilon(0.02));
    }

    // A zero component cannot move under the multiplicative walk.
    std::vector<double> zero_cand = propose({0.0, 1.0}, 0.5, rng);
    CHECK(zero_cand[0] == 0.0);
}

TEST_CASE("a flat posterior accepts every proposal") {
    ChainConfig cfg;
    cfg.n_states = 500;
    cfg.burn_in = 10;
    LogDensity flat = [](const std::vector<double>&) { return 0.0; };
    MarkovChain chain = run_chain(flat, {100.0, -0.1}, cfg, 9);
    CHECK(chain.acceptance_rate() == 1.0);
    CHECK(chain.length() == 500);
    CHECK(chain.dim == 2);
    for (std::uint8_t a : chain.accepted) CHECK(a == 1);
}

TEST_CASE("chains are reproducible per seed") {
    ChainConfig cfg;
    cfg.n_states = 400;
    cfg.burn_in = 0;
    LogDensity target = gaussian_target({6301.0, -0.147}, {91.0, 0.004});
    MarkovChain c1 = run_chain(target, {6301.0, -0.147}, cfg, 77);
    MarkovChain c2 = run_chain(target, {6301.0, -0.147}, cfg, 77);
    CHECK(c1.states == c2.states);
    CHECK(c1.log_posts == c2.log_posts);
    CHECK(c1.accepted == c2.accepted);
    MarkovChain c3 = run_chain(target, {6301.0, -0.147}, cfg, 78);
    CHECK(c1.states != c3.states);
}

TEST_CASE("a rejection repeats the previous state bitwise") {
    ChainConfig cfg;
    cfg.n_states = 2000;
    cfg.burn_in = 0;
    cfg.step_scale = 0.5; // huge steps force frequent rejections
    LogDensity target = gaussian_target({6301.0, -0.147}, {91.0, 0.004});
    MarkovChain chain = run_chain(target, {6301.0, -0.147}, cfg, 5);

    CHECK(chain.accepted[0] == 1);
    int rejections = 0;
    for (std::size_t i = 1; i < chain.length(); ++i) {
        if (chain.accepted[i]) continue;
        ++rejections;
        CHECK(chain.state(i)[0] == chain.state(i - 1)[0]);
        CHECK(chain.state(i)[1] == chain.state(i - 1)[1]);
        CHECK(chain.log_posts[i] == chain.log_posts[i - 1]);
    }
    CHECK(rejections > 100);
    for (double v : chain.states) CHECK(std::isfinite(v));
}

TEST_CASE("sampling recovers the moments of a known Gaussian") {
    std::vector<double> mu{6301.0, -0.147};
    std::vector<double> sigma{91.0, 0.004};
    ChainConfig cfg;
    cfg.n_states = 20000;
    cfg.burn_in = 1000;
    MarkovChain chain = run_chain(gaussian_target(mu, sigma), mu, cfg, 11);
    PosteriorSummary s = pool_chains({chain}, cfg.burn_in);

    REQUIRE(s.expected_value.size() == 2);
    for (int j = 0; j < 2; ++j) {
        CHECK(std::fabs(s.expected_value[j] - mu[j]) < 0.5 * sigma[j]);
        CHECK(s.std[j] == doctest::Approx(sigma[j]).epsilon(0.15));
        // 5th and 95th percentiles of a Gaussian sit 1.645 sigma out.
        CHECK(s.pct05[j] == doctest::Approx(mu[j] - 1.645 * sigma[j]).epsilon(0.1));
        CHECK(s.pct95[j] == doctest::Approx(mu[j] + 1.645 * sigma[j]).epsilon(0.1));
    }
    CHECK(s.n_pooled == 19000);
    // Mid-range acceptance confirms the walk neither freezes nor free-runs.
    CHECK(chain.acceptance_rate() > 0.2);
    CHECK(chain.acceptance_rate() < 0.98);
}

TEST_CASE("pooling drops burn-in per chain and concatenates the rest") {
    ChainConfig cfg;
    cfg.n_states = 1000;
    cfg.burn_in = 100;
    LogDensity target = gaussian_target({100.0, -0.1}, {5.0, 0.01});
    std::vector<MarkovChain> chains;
    for (std::uint64_t c = 0; c < 7; ++c)
        chains.push_back(run_chain(target, {100.0, -0.1}, cfg, 100 + c));

    PosteriorSummary pooled = pool_chains(chains, 100);
    CHECK(pooled.n_pooled == 6300);

    // One chain, no burn-in: pooling must agree with a direct summary.
    PosteriorSummary single = pool_chains({chains[0]}, 0);
    std::vector<double> column;
    for (std::size_t i = 0; i < chains[0].length(); ++i)
        column.push_back(chains[0].state(i)[0]);
    SampleSummary direct = summarize(column);
    CHECK(single.expected_value[0] == direct.mean);
    CHECK(single.std[0] == direct.std);
    CHECK(single.pct05[0] == direct.pct05);
    CHECK(single.pct95[0] == direct.pct95);
    CHECK(single.n_pooled == chains[0].length());

    CHECK_THROWS_AS(pool_chains(std::vector<MarkovChain>{}, 0), std::invalid_argument);
    CHECK_THROWS_AS(pool_chains(chains, 1000), std::invalid_argument); // nothing left
    CHECK_THROWS_AS(pool_chains(chains, std::vector<int>{1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(pool_chains(chains, -1), std::invalid_argument);

    std::vector<int> per_chain(7, 500);
    per_chain[0] = 0;
    PosteriorSummary uneven = pool_chains(chains, per_chain);
    CHECK(uneven.n_pooled == 1000 + 6 * 500);
}

TEST_CASE("settle detector finds where the log posterior levels off") {
    MarkovChain chain;
    chain.dim = 1;
    chain.log_posts = {-100.0, -50.0, -10.0, -1.005, -1.0, -1.0};
    chain.states = {0, 0, 0, 0, 0, 0};
    CHECK(suggested_burn_in(chain) == 3);

    MarkovChain flat;
    flat.dim = 1;
    flat.log_posts = {-2.0, -2.0};
    flat.states = {0, 0};
    CHECK(suggested_burn_in(flat) == 0);

    CHECK(suggested_burn_in(MarkovChain{}) == 0);
}

TEST_CASE("solver-backed chain family starts where configured") {
    FitnessSpec spec = make_spec(5.0, 2);
    ChainConfig cfg;
    cfg.n_states = 40;
    cfg.burn_in = 5;
    cfg.start_scales = {0.8, 1.0, 1.2};
    cfg.seed = 21;
    std::vector<MarkovChain> chains = run_chains(spec, cfg);
    REQUIRE(chains.size() == 3);
    for (std::size_t c = 0; c < chains.size(); ++c) {
        CHECK(chains[c].length() == 40);
        CHECK(chains[c].dim == 2);
        CHECK(chains[c].state(0)[0] == cfg.start_scales[c] * cfg.prior_mean[0]);
        CHECK(chains[c].state(0)[1] == cfg.start_scales[c] * cfg.prior_mean[1]);
        for (double v : chains[c].states) CHECK(std::isfinite(v));
    }
    CHECK(chains[0].seed != chains[1].seed);
    CHECK(chains[1].seed != chains[2].seed);

    // Same config, same family.
    std::vector<MarkovChain> again = run_chains(spec, cfg);
    for (std::size_t c = 0; c < chains.size(); ++c)
        CHECK(chains[c].states == again[c].states);
}

TEST_CASE("chain configuration validation") {
    ChainConfig good;
    CHECK_NOTHROW(good.validate());

    ChainConfig bad = good;
    bad.prior_std = {2000.0};
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = good;
    bad.prior_std[1] = 0.0;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = good;
    bad.meas_std = 0.0;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = good;
    bad.step_scale = -0.005;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = good;
    bad.n_states = 1;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = good;
    bad.burn_in = bad.n_states;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = good;
    bad.burn_in = -1;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = good;
    bad.start_scales.clear();
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = good;
    bad.start_scales = {1.0, 0.0};
    CHECK_THROWS_AS(bad.validate(), config_error);

    LogDensity flat = [](const std::vector<double>&) { return 0.0; };
    CHECK_THROWS_AS(run_chain(flat, {}, good, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_chain(LogDensity{}, {1.0, 2.0}, good, 1), std::invalid_argument);
}
