#include "castkit/inverse.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "castkit/errors.hpp"
#include "castkit/rng.hpp"

namespace castkit {

namespace {

void validate_history(const ThermalHistory& history, const std::string& what) {
    if (history.positions.empty())
        throw data_error(what + ": needs at least one probe");
    if (history.times.empty())
        throw data_error(what + ": no samples");
    if (history.temperatures.size() != history.positions.size())
        throw data_error(what + ": probe/temperature column mismatch");
    for (const auto& trace : history.temperatures)
        if (trace.size() != history.times.size())
            throw data_error(what + ": ragged temperature matrix");
    for (std::size_t k = 1; k < history.times.size(); ++k)
        if (!(history.times[k] > history.times[k - 1]))
            throw data_error(what + ": times must be strictly increasing");
    for (const auto& trace : history.temperatures)
        for (double v : trace)
            if (!std::isfinite(v))
                throw data_error(what + ": non-finite temperature");
}

} // namespace

void FitnessSpec::validate() const {
    alloy.validate();
    mesh.validate();
    boundary.validate(alloy);
    validate_history(experiment.history, "experiment");
    if (experiment.history.times.back() > mesh.t_end + 1e-9)
        throw config_error("experiment extends past mesh.t_end; simulation cannot cover it");
    if (experiment.noise_std < 0.0)
        throw config_error("experiment.noise_std must be >= 0");
}

double profile_rmsd(const std::vector<double>& simulated,
                    const std::vector<double>& measured) {
    if (simulated.empty() || simulated.size() != measured.size())
        throw std::invalid_argument("profile_rmsd: traces must be non-empty and equal length");
    double ss = 0.0;
    for (std::size_t i = 0; i < simulated.size(); ++i) {
        double r = simulated[i] - measured[i];
        ss += r * r;
    }
    return std::sqrt(ss / static_cast<double>(simulated.size()));
}

double fitness(const IhtcParams& params, const FitnessSpec& spec) {
    if (!std::isfinite(params.A) || !std::isfinite(params.B) || params.A < 0.0)
        return kDivergencePenalty;

    // Record every solver step so experiment timestamps land on a stored
    // step at most dt/2 away (dt is chosen well below the sampling interval).
    MeshSpec mesh = spec.mesh;
    mesh.sample_dt = 0.0;

    ThermalHistory sim;
    try {
        sim = simulate(spec.alloy, mesh, spec.boundary, params, spec.experiment.history.positions);
    } catch (const numerical_error&) {
        return kDivergencePenalty;
    }

    const auto& exp_h = spec.experiment.history;
    double total = 0.0;
    std::vector<double> sim_trace(exp_h.times.size());
    for (std::size_t p = 0; p < exp_h.positions.size(); ++p) {
        for (std::size_t k = 0; k < exp_h.times.size(); ++k)
            sim_trace[k] = sample_at(sim, exp_h.positions[p], exp_h.times[k]);
        total += profile_rmsd(sim_trace, exp_h.temperatures[p]);
    }
    return total;
}

Experiment synthesize_experiment(const IhtcParams& true_params,
                                 const AlloyProperties& alloy, const MeshSpec& mesh,
                                 const BoundarySpec& boundary,
                                 const std::vector<double>& probes,
                                 double noise_std, std::uint64_t seed) {
    if (noise_std < 0.0)
        throw std::invalid_argument("synthesize_experiment: noise_std must be >= 0");

    Experiment experiment;
    experiment.history = simulate(alloy, mesh, boundary, true_params, probes);
    experiment.noise_std = noise_std;

    SplitRng rng(seed);
    for (auto& trace : experiment.history.temperatures)
        for (double& v : trace)
            v += noise_std * rng.normal01();

    char buf[160];
    std::snprintf(buf, sizeof buf, "synthetic: A=%.10g B=%.10g noise_std=%.10g seed=%llu",
                  true_params.A, true_params.B, noise_std,
                  static_cast<unsigned long long>(seed));
    experiment.provenance = buf;
    return experiment;
}

namespace {

double parse_cell(const std::string& cell, const std::string& path, std::size_t line_no) {
    try {
        std::size_t used = 0;
        double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
            ++used;
        if (used != cell.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw data_error(path + ":" + std::to_string(line_no) + ": not a number: '" + cell + "'");
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

} // namespace

Experiment load_experiment(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open experiment file: " + path);

    Experiment experiment;
    experiment.provenance = path;
    ThermalHistory& history = experiment.history;

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(f, line))
        throw data_error(path + ": empty file (expected time_s,pos_<mm>,... header)");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split_csv_line(line);
    if (header.empty() || header[0] != "time_s")
        throw data_error(path + ":1: header must start with time_s");
    if (header.size() < 2)
        throw data_error(path + ":1: no probe columns (pos_<mm>) found");
    for (std::size_t j = 1; j < header.size(); ++j) {
        const std::string& name = header[j];
        if (name.rfind("pos_", 0) != 0)
            throw data_error(path + ":1: bad probe column '" + name + "' (expected pos_<mm>)");
        double mm = parse_cell(name.substr(4), path, 1);
        history.positions.push_back(mm / 1000.0);
    }
    history.temperatures.resize(history.positions.size());

    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw data_error(path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()));
        double t = parse_cell(cells[0], path, line_no);
        if (!history.times.empty() && !(t > history.times.back()))
            throw data_error(path + ":" + std::to_string(line_no) +
                             ": times must be strictly increasing");
        history.times.push_back(t);
        for (std::size_t j = 1; j < cells.size(); ++j)
            history.temperatures[j - 1].push_back(parse_cell(cells[j], path, line_no));
    }
    validate_history(history, path);

    std::ifstream meta(path + ".meta");
    if (meta) {
        std::size_t meta_line = 0;
        while (std::getline(meta, line)) {
            ++meta_line;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw data_error(path + ".meta:" + std::to_string(meta_line) +
                                 ": expected key = value");
            auto trim = [](std::string s) {
                while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
                while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
                return s;
            };
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key == "noise_std")
                experiment.noise_std = parse_cell(value, path + ".meta", meta_line);
            else if (key == "provenance")
                experiment.provenance = value;
            else
                throw data_error(path + ".meta:" + std::to_string(meta_line) +
                                 ": unknown key '" + key + "'");
        }
    }
    return experiment;
}

void save_experiment(const Experiment& experiment, const std::string& path) {
    write_history_csv(experiment.history, path);
    std::ofstream meta(path + ".meta", std::ios::binary);
    if (!meta) throw data_error("cannot open for writing: " + path + ".meta");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", experiment.noise_std);
    meta << "noise_std = " << buf << "\n";
    meta << "provenance = " << experiment.provenance << "\n";
    if (!meta) throw data_error("write failed: " + path + ".meta");
}

} // namespace castkit
