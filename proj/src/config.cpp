#include "castkit/config.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "castkit/errors.hpp"

namespace castkit {

namespace {

std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
    throw config_error("config line " + std::to_string(line) + ": " + message);
}

double to_double(const std::string& value, std::size_t line) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (trim(value.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    fail(line, "expected a number, got '" + value + "'");
}

int to_int(const std::string& value, std::size_t line) {
    double v = to_double(value, line);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) fail(line, "expected an integer, got '" + value + "'");
    return i;
}

std::uint64_t to_u64(const std::string& value, std::size_t line) {
    // stoull quietly wraps negative input, so screen the sign ourselves.
    if (value.empty() || value[0] == '-') fail(line, "expected a non-negative integer, got '" + value + "'");
    try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(value, &used);
        if (trim(value.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    fail(line, "expected a non-negative integer, got '" + value + "'");
}

bool to_bool(const std::string& value, std::size_t line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail(line, "expected true/false, got '" + value + "'");
}

std::vector<double> to_list(const std::string& value, std::size_t line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(to_double(trim(cell), line));
    if (out.empty()) fail(line, "expected a comma-separated list of numbers");
    return out;
}

using Setter = std::function<void(const std::string& value, std::size_t line)>;
using Section = std::map<std::string, Setter>;

} // namespace

ToolConfig parse_config_text(const std::string& text) {
    ToolConfig config;

    std::set<std::string> alloy_seen;
    auto alloy_field = [&](const char* name, double* slot) {
        return std::pair<std::string, Setter>(name, [&alloy_seen, name, slot](const std::string& v, std::size_t line) {
            *slot = to_double(v, line);
            alloy_seen.insert(name);
        });
    };

    Section alloy{
        alloy_field("k_s", &config.alloy.k_s),
        alloy_field("k_l", &config.alloy.k_l),
        alloy_field("c_s", &config.alloy.c_s),
        alloy_field("c_l", &config.alloy.c_l),
        alloy_field("rho_s", &config.alloy.rho_s),
        alloy_field("rho_l", &config.alloy.rho_l),
        alloy_field("latent_heat", &config.alloy.L),
        alloy_field("t_f", &config.alloy.T_f),
        alloy_field("t_liq", &config.alloy.T_liq),
        alloy_field("t_sol", &config.alloy.T_sol),
        alloy_field("k0", &config.alloy.k0),
    };

    auto num = [](double* slot) {
        return [slot](const std::string& v, std::size_t line) { *slot = to_double(v, line); };
    };
    auto integer = [](int* slot) {
        return [slot](const std::string& v, std::size_t line) { *slot = to_int(v, line); };
    };
    auto u64 = [](std::uint64_t* slot) {
        return [slot](const std::string& v, std::size_t line) { *slot = to_u64(v, line); };
    };

    Section mesh{
        {"length", num(&config.mesh.length)},
        {"n_volumes", integer(&config.mesh.n_volumes)},
        {"dt", num(&config.mesh.dt)},
        {"t_end", num(&config.mesh.t_end)},
        {"sample_dt", num(&config.mesh.sample_dt)},
    };
    Section boundary{
        {"t_env", num(&config.boundary.T_env)},
        {"t_init", num(&config.boundary.T_init)},
    };
    Section search{
        {"a_min", num(&config.search.lower[0])},
        {"a_max", num(&config.search.upper[0])},
        {"b_min", num(&config.search.lower[1])},
        {"b_max", num(&config.search.upper[1])},
    };
    Section run{
        {"n_particles", integer(&config.run.n_particles)},
        {"max_iterations", integer(&config.run.max_iterations)},
        {"stall_limit", integer(&config.run.stall_limit)},
        {"seed", u64(&config.run.seed)},
    };
    Section tool{
        {"replicates", integer(&config.replicates)},
        {"workers", integer(&config.workers)},
        {"output_dir",
         [&config](const std::string& v, std::size_t) { config.output_dir = v; }},
        {"probes",
         [&config](const std::string& v, std::size_t line) { config.probes = to_list(v, line); }},
    };
    Section mcmc{
        {"prior_mean_a", num(&config.mcmc.prior_mean[0])},
        {"prior_mean_b", num(&config.mcmc.prior_mean[1])},
        {"prior_std_a", num(&config.mcmc.prior_std[0])},
        {"prior_std_b", num(&config.mcmc.prior_std[1])},
        {"meas_std", num(&config.mcmc.meas_std)},
        {"step_scale", num(&config.mcmc.step_scale)},
        {"n_states", integer(&config.mcmc.n_states)},
        {"burn_in", integer(&config.mcmc.burn_in)},
        {"auto_burn_in",
         [&config](const std::string& v, std::size_t line) {
             config.mcmc.auto_burn_in = to_bool(v, line);
         }},
        {"start_scales",
         [&config](const std::string& v, std::size_t line) {
             config.mcmc.start_scales = to_list(v, line);
         }},
        {"seed", u64(&config.mcmc.seed)},
    };
    Section experiment{
        {"path",
         [&config](const std::string& v, std::size_t) { config.experiment.path = v; }},
        {"true_a", num(&config.experiment.true_a)},
        {"true_b", num(&config.experiment.true_b)},
        {"noise_std", num(&config.experiment.noise_std)},
        {"seed", u64(&config.experiment.seed)},
    };

    auto& alg = config.algorithms;
    Section pso{{"alpha", num(&alg.pso.alpha)}, {"beta", num(&alg.pso.beta)},
                {"theta", num(&alg.pso.theta)}};
    Section de{{"f1", num(&alg.de.f1)}, {"f2", num(&alg.de.f2)}, {"cr", num(&alg.de.cr)}};
    Section ba{{"loudness0", num(&alg.ba.loudness0)}, {"pulse0", num(&alg.ba.pulse0)},
               {"f_min", num(&alg.ba.f_min)},         {"f_max", num(&alg.ba.f_max)},
               {"gamma", num(&alg.ba.gamma)},         {"alpha", num(&alg.ba.alpha)},
               {"sigma", num(&alg.ba.sigma)}};
    Section fpa{{"p", num(&alg.fpa.p)},
                {"lambda", num(&alg.fpa.lambda)},
                {"gamma", num(&alg.fpa.gamma)}};
    Section gwo{};
    Section mfo{{"b", num(&alg.mfo.b)}};
    Section sca{{"a", num(&alg.sca.a)}};
    Section woa{{"b", num(&alg.woa.b)}};
    Section da{{"lambda", num(&alg.da.lambda)},
               {"radius_start", num(&alg.da.radius_start)},
               {"radius_end", num(&alg.da.radius_end)},
               {"w_start", num(&alg.da.w_start)},
               {"w_end", num(&alg.da.w_end)},
               {"c_decay", num(&alg.da.c_decay)}};
    Section hho{{"lambda", num(&alg.hho.lambda)}};

    std::map<std::string, Section*> sections{
        {"alloy", &alloy},   {"mesh", &mesh}, {"boundary", &boundary},
        {"search", &search}, {"run", &run},   {"tool", &tool},
        {"mcmc", &mcmc},     {"experiment", &experiment},
        {"pso", &pso},       {"de", &de},     {"ba", &ba},
        {"fpa", &fpa},       {"gwo", &gwo},   {"mfo", &mfo},
        {"sca", &sca},       {"woa", &woa},   {"da", &da},
        {"hho", &hho},
    };

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    Section* current = nullptr;
    std::string current_name;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            current_name = trim(line.substr(1, line.size() - 2));
            auto it = sections.find(current_name);
            if (it == sections.end()) fail(line_no, "unknown section [" + current_name + "]");
            current = it->second;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        if (current == nullptr) fail(line_no, "key outside any [section]");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        auto it = current->find(key);
        if (it == current->end())
            fail(line_no, "unknown key '" + key + "' in [" + current_name + "]");
        it->second(value, line_no);
    }

    if (!alloy_seen.empty() && alloy_seen.size() != alloy.size()) {
        std::string missing;
        for (const auto& kv : alloy)
            if (!alloy_seen.count(kv.first)) missing += (missing.empty() ? "" : ", ") + kv.first;
        throw config_error("config: [alloy] must set every field; missing: " + missing);
    }

    config.alloy.validate();
    config.mesh.validate();
    config.boundary.validate(config.alloy);
    config.search.validate();
    config.run.validate();
    config.mcmc.validate();
    if (config.replicates < 1) throw config_error("config: tool.replicates must be >= 1");
    if (config.workers < 0) throw config_error("config: tool.workers must be >= 0");
    if (config.output_dir.empty()) throw config_error("config: tool.output_dir must be set");
    if (config.probes.empty()) throw config_error("config: tool.probes must not be empty");
    for (double p : config.probes)
        if (!(p >= 0.0 && p <= config.mesh.length))
            throw config_error("config: probe positions must lie in [0, mesh.length]");
    if (config.experiment.noise_std < 0.0)
        throw config_error("config: experiment.noise_std must be >= 0");
    return config;
}

ToolConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << f.rdbuf();
    try {
        return parse_config_text(buffer.str());
    } catch (const config_error& e) {
        throw config_error(path + ": " + e.what());
    }
}

AlgorithmConfig algorithm_with_overrides(const ToolConfig& config, const std::string& name) {
    if (name == "pso") return config.algorithms.pso;
    if (name == "de") return config.algorithms.de;
    if (name == "ba") return config.algorithms.ba;
    if (name == "fpa") return config.algorithms.fpa;
    if (name == "gwo") return config.algorithms.gwo;
    if (name == "mfo") return config.algorithms.mfo;
    if (name == "sca") return config.algorithms.sca;
    if (name == "woa") return config.algorithms.woa;
    if (name == "da") return config.algorithms.da;
    if (name == "hho") return config.algorithms.hho;
    return algorithm_by_name(name); // throws with the list of valid names
}

} // namespace castkit
