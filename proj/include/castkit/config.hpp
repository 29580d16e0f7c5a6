#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "castkit/fvm.hpp"
#include "castkit/inverse.hpp"
#include "castkit/mcmc.hpp"
#include "castkit/metaheuristics.hpp"

namespace castkit {

/// Where the measured data comes from: a CSV on disk, or a synthetic set
/// generated from known parameters (the default when no path is given).
struct ExperimentConfig {
    std::string path;       ///< empty means synthesize
    double true_a = 6301.0;
    double true_b = -0.147;
    double noise_std = 5.0;
    std::uint64_t seed = 2026;
};

/// Hyperparameter overrides for each optimizer, applied on top of defaults.
struct AlgorithmOverrides {
    PsoConfig pso;
    DeConfig de;
    BaConfig ba;
    FpaConfig fpa;
    GwoConfig gwo;
    MfoConfig mfo;
    ScaConfig sca;
    WoaConfig woa;
    DaConfig da;
    HhoConfig hho;
};

/// Fully validated tool configuration; every command runs from one of these
/// plus command-line seeds, nothing else.
struct ToolConfig {
    AlloyProperties alloy;
    MeshSpec mesh;
    BoundarySpec boundary;
    SearchSpace search{{0.0, -0.5}, {10000.0, -0.005}};
    RunConfig run;
    int replicates = 40;
    int workers = 0; ///< worker-pool size; 0 means all available cores
    ChainConfig mcmc;
    ExperimentConfig experiment;
    std::vector<double> probes{0.004, 0.008, 0.012};
    std::string output_dir = "out";
    AlgorithmOverrides algorithms;
};

/// Parse and validate a sectioned key-value configuration file. Unknown
/// sections or keys, unreadable values, and violated invariants all raise
/// config_error with the offending line or section.field spelled out.
ToolConfig parse_config(const std::string& path);

/// Same parser over in-memory text (the file loader calls this).
ToolConfig parse_config_text(const std::string& text);

/// The configured optimizer including any [section] overrides.
AlgorithmConfig algorithm_with_overrides(const ToolConfig& config, const std::string& name);

} // namespace castkit
