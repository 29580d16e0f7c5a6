#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "castkit/rng.hpp"

namespace castkit {

/// Axis-aligned search box.
struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    void validate() const;
    std::size_t dim() const { return lower.size(); }
};

/// Population/iteration budget shared by all ten algorithms.
struct RunConfig {
    int n_particles = 20;
    int max_iterations = 100;
    int stall_limit = 10; ///< stop after this many iterations with an unchanged best vector
    std::uint64_t seed = 1;

    void validate() const;
};

// Per-algorithm hyperparameters, defaults as benchmarked.
struct PsoConfig { double alpha = 2.0; double beta = 2.0; double theta = 1.0; };
struct DeConfig  { double f1 = 0.5; double f2 = 0.5; double cr = 0.8; };
struct BaConfig  {
    double loudness0 = 0.25;
    double pulse0 = 0.5;
    double f_min = 0.0;
    double f_max = 2.0;
    double gamma = 0.9;
    double alpha = 0.9;
    double sigma = 1.0;
};
struct FpaConfig { double p = 0.8; double lambda = 1.5; double gamma = 0.1; };
struct GwoConfig {};
struct MfoConfig { double b = 1.0; };
struct ScaConfig { double a = 2.0; };
struct WoaConfig { double b = 1.0; };
struct DaConfig  {
    double lambda = 1.5;
    // Imported schedule defaults (see da_step implementation notes).
    double radius_start = 0.25; ///< neighbourhood radius at t=0, fraction of box diagonal
    double radius_end = 1.0;    ///< radius at t=max_iterations
    double w_start = 0.9;       ///< inertia weight schedule endpoints
    double w_end = 0.4;
    double c_decay = 0.1;       ///< initial value of the decaying swarm-weight factor
};
struct HhoConfig { double lambda = 1.5; };

/// Tagged union selecting the optimizer and carrying its hyperparameters.
using AlgorithmConfig = std::variant<PsoConfig, DeConfig, BaConfig, FpaConfig, GwoConfig,
                                     MfoConfig, ScaConfig, WoaConfig, DaConfig, HhoConfig>;

/// Canonical lowercase names, in benchmark row order.
const std::vector<std::string>& algorithm_names();

/// Default-constructed config for a name; throws config_error listing the
/// ten valid names otherwise.
AlgorithmConfig algorithm_by_name(const std::string& name);

std::string algorithm_name(const AlgorithmConfig& algorithm);

/// One optimizer execution.
struct RunResult {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::vector<double> best_params;
    double best_fitness = 0.0;
    int iterations_used = 0;
    /// Best-so-far after initialization (index 0) and after each iteration.
    std::vector<double> fitness_trace;
    /// Best-so-far parameter vectors aligned with fitness_trace.
    std::vector<std::vector<double>> param_trace;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Componentwise projection onto the box.
void clamp(std::vector<double>& candidate, const SearchSpace& space);

/// Run one algorithm: uniform-random initialization inside the box, then the
/// algorithm's update rule until max_iterations or until the best parameter
/// vector is bitwise-unchanged for stall_limit consecutive iterations.
/// Returns the best point ever evaluated.
RunResult run(const AlgorithmConfig& algorithm, const SearchSpace& space,
              const RunConfig& config, const Objective& objective);

/// Mantegna scale sigma(lambda) = [Gamma(1+l) sin(pi l/2) /
/// (l Gamma((1+l)/2) 2^((l-1)/2))]^(1/l), valid for 1 < lambda <= 2.
double levy_sigma(double lambda);

/// The three Levy-step recipes used by the algorithms. All share the Pareto
/// tail index lambda; they differ in draw distribution and prefactor.
enum class LevyFlavor {
    fpa, ///< sigma*n / |n1|^(1/lambda), n and n1 standard normal
    da,  ///< 0.01 * u1*sigma / |u2|^(1/lambda), u1 and u2 uniform in [0,1)
    hho, ///< 0.01 * sigma*n / |n1|^(1/lambda), n and n1 standard normal
};

double levy_step(double lambda, SplitRng& rng, LevyFlavor flavor);

// Deterministic schedule pieces, exposed for direct verification.
double encircle_coefficient(int t, int t_max);                ///< 2 -> 0 linearly
double sca_amplitude(double a, int t, int t_max);             ///< a - t*a/t_max
int mfo_flame_target(int t, int t_max, int n_max);            ///< round-half-up, floor 1
double hho_escape_energy(double e0, int t, int t_max);        ///< 2*e0*(1 - t/t_max)
double ba_pulse_rate(double r0, double gamma, int k);         ///< r0*(1 - exp(-gamma*k))

} // namespace castkit
