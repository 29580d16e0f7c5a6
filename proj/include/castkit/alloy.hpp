#pragma once

#include <cmath>
#include <stdexcept>

namespace castkit {

/// Thermophysical constants of the solidifying alloy. All values SI.
/// The shipped defaults are representative of Al-7wt.%Si, not ground truth;
/// real studies should load measured values from the configuration file.
struct AlloyProperties {
    double k_s = 180.0;    ///< thermal conductivity of solid (W/m K)
    double k_l = 90.0;     ///< thermal conductivity of liquid (W/m K)
    double c_s = 1000.0;   ///< specific heat of solid (J/kg K)
    double c_l = 1100.0;   ///< specific heat of liquid (J/kg K)
    double rho_s = 2680.0; ///< density of solid (kg/m^3)
    double rho_l = 2450.0; ///< density of liquid (kg/m^3)
    double L = 3.89e5;     ///< latent heat (J/kg)
    double T_f = 933.0;    ///< melting temperature of the pure solvent (K)
    double T_liq = 890.0;  ///< liquidus temperature (K)
    double T_sol = 850.0;  ///< solidus / eutectic cutoff (K)
    double k0 = 0.13;      ///< partition coefficient

    void validate() const;
};

/// Effective transport properties at one temperature.
struct EffectiveProperties {
    double cp_pseudo; ///< mixture specific heat plus latent-heat release (J/kg K)
    double k;         ///< mixture thermal conductivity (W/m K)
    double rho;       ///< mixture density (kg/m^3)
};

namespace detail {
inline void require_finite_temperature(double T) {
    if (!std::isfinite(T))
        throw std::invalid_argument("alloy: temperature must be finite");
}
} // namespace detail

/// Scheil solid fraction. 0 at/above liquidus, 1 at/below the solidus cutoff,
/// 1 - ((T_f - T)/(T_f - T_liq))^(1/(k0-1)) in between. Non-increasing in T.
inline double solid_fraction(double T, const AlloyProperties& alloy) {
    detail::require_finite_temperature(T);
    if (T >= alloy.T_liq) return 0.0;
    if (T <= alloy.T_sol) return 1.0;
    double u = (alloy.T_f - T) / (alloy.T_f - alloy.T_liq);
    return 1.0 - std::pow(u, 1.0 / (alloy.k0 - 1.0));
}

/// Analytic d(solid_fraction)/dT. Zero outside the mushy zone, <= 0 inside.
/// Analytic on purpose: a numeric derivative would put noise into cp_pseudo.
inline double dfs_dT(double T, const AlloyProperties& alloy) {
    detail::require_finite_temperature(T);
    if (T >= alloy.T_liq || T <= alloy.T_sol) return 0.0;
    double span = alloy.T_f - alloy.T_liq;
    double p = 1.0 / (alloy.k0 - 1.0);
    double u = (alloy.T_f - T) / span;
    return p * std::pow(u, p - 1.0) / span;
}

/// Mixture laws plus the pseudo specific heat c_m - L*dfs/dT that absorbs
/// latent-heat release over the mushy zone.
inline EffectiveProperties effective_properties(double T, const AlloyProperties& alloy) {
    double fs = solid_fraction(T, alloy);
    double c_m = fs * alloy.c_s + (1.0 - fs) * alloy.c_l;
    EffectiveProperties out;
    out.cp_pseudo = c_m - alloy.L * dfs_dT(T, alloy);
    out.k = fs * alloy.k_s + (1.0 - fs) * alloy.k_l;
    out.rho = fs * alloy.rho_s + (1.0 - fs) * alloy.rho_l;
    return out;
}

} // namespace castkit
