#include "castkit/fvm.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "castkit/errors.hpp"

namespace castkit {

void MeshSpec::validate() const {
    if (!(length > 0.0) || !std::isfinite(length))
        throw config_error("mesh.length must be > 0");
    if (n_volumes < 3)
        throw config_error("mesh.n_volumes must be >= 3");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw config_error("mesh.dt must be > 0");
    if (!(t_end >= dt) || !std::isfinite(t_end))
        throw config_error("mesh.t_end must be >= mesh.dt");
    if (sample_dt < 0.0 || !std::isfinite(sample_dt))
        throw config_error("mesh.sample_dt must be >= 0");
}

void BoundarySpec::validate(const AlloyProperties& alloy) const {
    if (!std::isfinite(T_env) || !std::isfinite(T_init))
        throw config_error("boundary temperatures must be finite");
    if (!(T_init > T_env))
        throw config_error("boundary.t_init must exceed boundary.t_env");
    if (!(T_init > alloy.T_liq))
        throw config_error("boundary.t_init must exceed alloy.t_liq (melt starts liquid)");
}

void StepWorkspace::resize(std::size_t n) {
    sub.resize(n);
    diag.resize(n);
    sup.resize(n);
    rhs.resize(n);
    cap.resize(n);
    cond.resize(n > 0 ? n - 1 : 0);
}

double advance_step(std::vector<double>& T, double t_next, double dt,
                    const AlloyProperties& alloy, const BoundarySpec& boundary,
                    const IhtcParams& ihtc, double dz, StepWorkspace& ws) {
    const std::size_t n = T.size();
    assert(n >= 2);
    ws.resize(n);

    // Properties lagged at the current field. Face conductance pairs the two
    // neighbouring conductivities harmonically so the face flux is continuous.
    EffectiveProperties p0 = effective_properties(T[0], alloy);
    ws.cap[0] = p0.rho * p0.cp_pseudo * dz;
    double k_prev = p0.k;
    const double k_first = p0.k;
    for (std::size_t i = 1; i < n; ++i) {
        EffectiveProperties p = effective_properties(T[i], alloy);
        ws.cap[i] = p.rho * p.cp_pseudo * dz;
        ws.cond[i - 1] = 2.0 * k_prev * p.k / (k_prev + p.k) / dz;
        k_prev = p.k;
    }

    // Sink coefficient on cell 0: contact coefficient h(t') in series with
    // the half-cell conduction path, so the modeled flux is h*(T_face - T_env).
    double h = ihtc.A == 0.0 ? 0.0 : ihtc_eval(ihtc, t_next);
    double U = h > 0.0 ? 1.0 / (1.0 / h + dz / (2.0 * k_first)) : 0.0;

    // (capacity + dt*conductance) T' = capacity*T + dt*U*T_env, backward Euler.
    // Written so dt = 0 reduces to the identity.
    for (std::size_t i = 0; i < n; ++i) {
        double gW = i > 0 ? ws.cond[i - 1] : 0.0;
        double gE = i + 1 < n ? ws.cond[i] : 0.0;
        ws.sub[i] = -dt * gW;
        ws.sup[i] = -dt * gE;
        ws.diag[i] = ws.cap[i] + dt * (gW + gE);
        ws.rhs[i] = ws.cap[i] * T[i];
    }
    ws.diag[0] += dt * U;
    ws.rhs[0] += dt * U * boundary.T_env;

    // Thomas sweep. The matrix is strictly diagonally dominant with positive
    // diagonal for any positive properties, so no pivoting is needed.
    for (std::size_t i = 1; i < n; ++i) {
        double w = ws.sub[i] / ws.diag[i - 1];
        ws.diag[i] -= w * ws.sup[i - 1];
        ws.rhs[i] -= w * ws.rhs[i - 1];
    }
    T[n - 1] = ws.rhs[n - 1] / ws.diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        T[i] = (ws.rhs[i] - ws.sup[i] * T[i + 1]) / ws.diag[i];

    return dt * U * (T[0] - boundary.T_env);
}

namespace {

// Deterministic probe-to-cell mapping: nearest cell center.
std::size_t probe_cell(double position, double dz, std::size_t n) {
    long long idx = std::llround(position / dz - 0.5);
    idx = std::clamp(idx, 0LL, static_cast<long long>(n) - 1);
    return static_cast<std::size_t>(idx);
}

} // namespace

ThermalHistory simulate(const AlloyProperties& alloy, const MeshSpec& mesh,
                        const BoundarySpec& boundary, const IhtcParams& ihtc,
                        const std::vector<double>& probes) {
    alloy.validate();
    mesh.validate();
    boundary.validate(alloy);
    ihtc.validate();
    if (probes.empty())
        throw std::invalid_argument("simulate: at least one probe required");
    for (double p : probes)
        if (!(p >= 0.0 && p <= mesh.length))
            throw std::invalid_argument("simulate: probe position " + std::to_string(p) +
                                        " outside [0, length]");

    const auto n = static_cast<std::size_t>(mesh.n_volumes);
    const double dz = mesh.length / static_cast<double>(mesh.n_volumes);
    std::vector<std::size_t> cells(probes.size());
    for (std::size_t p = 0; p < probes.size(); ++p)
        cells[p] = probe_cell(probes[p], dz, n);

    ThermalHistory history;
    history.positions = probes;
    history.temperatures.resize(probes.size());

    std::vector<double> T(n, boundary.T_init);
    StepWorkspace ws;

    auto record = [&](double t) {
        history.times.push_back(t);
        for (std::size_t p = 0; p < cells.size(); ++p)
            history.temperatures[p].push_back(T[cells[p]]);
    };
    record(0.0);

    const auto n_steps =
        static_cast<long long>(std::ceil(mesh.t_end / mesh.dt - 1e-9));
    double next_sample = mesh.sample_dt;
    for (long long step = 1; step <= n_steps; ++step) {
        double t = static_cast<double>(step) * mesh.dt;
        advance_step(T, t, mesh.dt, alloy, boundary, ihtc, dz, ws);
        for (double v : T)
            if (!std::isfinite(v))
                throw numerical_error("simulate: diverged at step " + std::to_string(step) +
                                      " (t = " + std::to_string(t) + " s)");
        if (mesh.sample_dt <= 0.0) {
            record(t);
        } else if (t >= next_sample - 1e-9) {
            record(t);
            next_sample += mesh.sample_dt;
        }
    }
    return history;
}

double sample_at(const ThermalHistory& history, double position, double time) {
    if (history.times.empty() || history.positions.empty())
        throw std::invalid_argument("sample_at: empty history");
    auto [pmin, pmax] = std::minmax_element(history.positions.begin(), history.positions.end());
    if (!(position >= *pmin && position <= *pmax))
        throw std::invalid_argument("sample_at: position outside recorded probes");
    if (!(time >= history.times.front() && time <= history.times.back()))
        throw std::invalid_argument("sample_at: time outside recorded range");

    std::size_t pi = 0;
    double best = std::abs(history.positions[0] - position);
    for (std::size_t j = 1; j < history.positions.size(); ++j) {
        double d = std::abs(history.positions[j] - position);
        if (d < best) {
            best = d;
            pi = j;
        }
    }

    auto it = std::lower_bound(history.times.begin(), history.times.end(), time);
    std::size_t ti = static_cast<std::size_t>(it - history.times.begin());
    if (ti == history.times.size()) {
        ti = history.times.size() - 1;
    } else if (ti > 0) {
        double d_hi = history.times[ti] - time;
        double d_lo = time - history.times[ti - 1];
        if (d_lo <= d_hi) ti -= 1; // ties resolve to the earlier sample
    }
    return history.temperatures[pi][ti];
}

std::string history_to_csv(const ThermalHistory& history) {
    std::string out = "time_s";
    char buf[64];
    for (double pos : history.positions) {
        std::snprintf(buf, sizeof buf, ",pos_%.10g", pos * 1000.0);
        out += buf;
    }
    out += '\n';
    for (std::size_t k = 0; k < history.times.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.6f", history.times[k]);
        out += buf;
        for (const auto& trace : history.temperatures) {
            std::snprintf(buf, sizeof buf, ",%.6f", trace[k]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_history_csv(const ThermalHistory& history, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot open for writing: " + path);
    f << history_to_csv(history);
    if (!f) throw data_error("write failed: " + path);
}

} // namespace castkit
