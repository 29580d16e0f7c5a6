#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "castkit/fvm.hpp"

namespace castkit {

/// Thermocouple data set: measured histories plus bookkeeping about where
/// they came from.
struct Experiment {
    ThermalHistory history;
    double noise_std = 5.0;  ///< assumed measurement standard deviation (K)
    std::string provenance;  ///< file path or synthesis description
};

/// Everything the objective needs besides the candidate (A, B).
struct FitnessSpec {
    AlloyProperties alloy;
    MeshSpec mesh;
    BoundarySpec boundary;
    Experiment experiment;

    void validate() const;
};

/// Objective value returned when the forward solve diverges; large but finite
/// so stochastic optimizers can keep moving.
inline constexpr double kDivergencePenalty = 1.0e6;

/// Root-mean-square deviation between two aligned traces (K).
double profile_rmsd(const std::vector<double>& simulated,
                    const std::vector<double>& measured);

/// Objective of the inverse problem: simulate with `params`, sample the
/// simulation at each experiment timestamp (nearest stored step), and sum the
/// per-probe RMS deviations. Solver divergence yields kDivergencePenalty.
double fitness(const IhtcParams& params, const FitnessSpec& spec);

/// Forward-simulate with known parameters and add i.i.d. Gaussian noise,
/// producing a surrogate experiment with recorded ground truth.
Experiment synthesize_experiment(const IhtcParams& true_params,
                                 const AlloyProperties& alloy, const MeshSpec& mesh,
                                 const BoundarySpec& boundary,
                                 const std::vector<double>& probes,
                                 double noise_std, std::uint64_t seed);

/// Read an experiment from the history CSV format (plus the optional sidecar
/// `<path>.meta`); errors carry the offending line number.
Experiment load_experiment(const std::string& path);

/// Write `experiment.history` as CSV and the sidecar metadata file.
void save_experiment(const Experiment& experiment, const std::string& path);

} // namespace castkit
