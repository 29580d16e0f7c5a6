#pragma once

#include <vector>

#include "castkit/alloy.hpp"
#include "castkit/ihtc.hpp"

namespace castkit {

/// Uniform 1-D finite-volume discretization of the casting column.
struct MeshSpec {
    double length = 0.06;   ///< domain height (m)
    int n_volumes = 50;     ///< cell count
    double dt = 0.01;       ///< time step (s)
    double t_end = 200.0;   ///< simulated duration (s)
    double sample_dt = 0.0; ///< output interval (s); 0 records every step

    void validate() const;
};

/// Thermal boundary data: constant sink below, insulation everywhere else.
struct BoundarySpec {
    double T_env = 300.0;  ///< external sink temperature (K)
    double T_init = 973.0; ///< uniform initial melt temperature (K)

    void validate(const AlloyProperties& alloy) const;
};

/// Time-stamped temperatures at probe positions; used both for simulation
/// output and (via the experiment loader) for measured data.
struct ThermalHistory {
    std::vector<double> times;                      ///< sample instants (s), strictly increasing
    std::vector<double> positions;                  ///< probe heights (m), as requested
    std::vector<std::vector<double>> temperatures;  ///< temperatures[probe][sample] (K)
};

/// Scratch buffers for the tridiagonal step; reused across steps of one run.
struct StepWorkspace {
    std::vector<double> sub, diag, sup, rhs; ///< tridiagonal system
    std::vector<double> cap;                 ///< lagged heat capacity per cell (J/m^2 K)
    std::vector<double> cond;                ///< face conductances (W/m^2 K), size n-1
    void resize(std::size_t n);
};

/// One implicit (backward-Euler) step with properties lagged at the current
/// field. The bottom face exchanges q = h(t_next)*(T_face - T_env), folded
/// with the half-cell conduction resistance into a series coefficient on
/// cell 0; the top face is insulated. Returns the heat extracted through the
/// bottom during the step (J/m^2), so callers can close the energy balance:
///   sum_i rho_i c_i dz (T_i' - T_i) = -returned value   (exactly)
double advance_step(std::vector<double>& T, double t_next, double dt,
                    const AlloyProperties& alloy, const BoundarySpec& boundary,
                    const IhtcParams& ihtc, double dz, StepWorkspace& ws);

/// Integrate the solidification problem and record probe temperatures.
/// Probes snap to the nearest cell center (deterministic; documented in the
/// implementation). Runs ceil(t_end/dt) uniform steps. Throws numerical_error
/// naming the offending step if the field ever turns non-finite.
ThermalHistory simulate(const AlloyProperties& alloy, const MeshSpec& mesh,
                        const BoundarySpec& boundary, const IhtcParams& ihtc,
                        const std::vector<double>& probes);

/// Nearest-position, nearest-time lookup (no interpolation; ties resolve to
/// the lower index). Rejects queries outside the recorded ranges.
double sample_at(const ThermalHistory& history, double position, double time);

/// CSV export: header `time_s,pos_<mm>,...`, fixed 6-decimal cells so equal
/// histories produce byte-equal files.
void write_history_csv(const ThermalHistory& history, const std::string& path);
std::string history_to_csv(const ThermalHistory& history);

} // namespace castkit
