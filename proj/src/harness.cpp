#include "castkit/harness.hpp"

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "castkit/errors.hpp"
#include "castkit/parallel.hpp"
#include "castkit/rng.hpp"
#include "castkit/stats.hpp"

namespace castkit {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot open for writing: " + path);
    return f;
}

void finish_out(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f) throw data_error("write failed: " + path);
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw data_error("cannot create directory " + dir + ": " + ec.message());
}

Objective make_objective(const FitnessSpec& spec) {
    return [&spec](const std::vector<double>& x) {
        IhtcParams params;
        params.A = x[0];
        params.B = x[1];
        return fitness(params, spec);
    };
}

void write_histogram_csv(const std::vector<double>& samples, const std::string& path) {
    int bins = samples.size() >= 3 ? doane_bin_count(samples) : 1;
    Histogram h = histogram(samples, bins);
    auto f = open_out(path);
    f << "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        f << fmt(h.edges[b]) << ',' << fmt(h.edges[b + 1]) << ',' << h.counts[b] << '\n';
    finish_out(f, path);
}

} // namespace

Experiment resolve_experiment(const ToolConfig& config) {
    if (!config.experiment.path.empty()) return load_experiment(config.experiment.path);
    IhtcParams truth;
    truth.A = config.experiment.true_a;
    truth.B = config.experiment.true_b;
    return synthesize_experiment(truth, config.alloy, config.mesh, config.boundary,
                                 config.probes, config.experiment.noise_std,
                                 config.experiment.seed);
}

FitnessSpec make_fitness_spec(const ToolConfig& config) {
    FitnessSpec spec;
    spec.alloy = config.alloy;
    spec.mesh = config.mesh;
    spec.boundary = config.boundary;
    spec.experiment = resolve_experiment(config);
    spec.validate();
    return spec;
}

std::uint64_t derive_run_seed(std::uint64_t top_seed, int algorithm_index, int replicate) {
    return SplitRng(top_seed)
        .sub(static_cast<std::uint64_t>(algorithm_index) + 1)
        .sub(static_cast<std::uint64_t>(replicate) + 1)
        .next_u64();
}

int resolve_workers(const ToolConfig& config) {
    int workers = config.workers;
    if (const char* env = std::getenv("CASTKIT_WORKERS")) {
        try {
            std::size_t used = 0;
            workers = std::stoi(env, &used);
            if (env[used] != '\0' || workers < 1)
                throw std::invalid_argument("range");
        } catch (const std::exception&) {
            throw config_error("CASTKIT_WORKERS must be a positive integer, got '" +
                               std::string(env) + "'");
        }
    }
    if (workers < 1) workers = static_cast<int>(std::thread::hardware_concurrency());
    return workers < 1 ? 1 : workers;
}

void write_run_csv(const RunResult& result, const std::string& path) {
    auto f = open_out(path);
    f << "iteration,best_a,best_b,best_fitness\n";
    for (std::size_t i = 0; i < result.fitness_trace.size(); ++i) {
        f << i;
        for (double p : result.param_trace[i]) f << ',' << fmt(p);
        f << ',' << fmt(result.fitness_trace[i]) << '\n';
    }
    f << "# algorithm=" << result.algorithm << " seed=" << result.seed
      << " iterations_used=" << result.iterations_used
      << " best_fitness=" << fmt(result.best_fitness) << '\n';
    finish_out(f, path);
}

void cmd_simulate(const ToolConfig& config, double A, double B,
                  const std::string& out_path) {
    IhtcParams params;
    params.A = A;
    params.B = B;
    params.validate();
    ThermalHistory history =
        simulate(config.alloy, config.mesh, config.boundary, params, config.probes);
    write_history_csv(history, out_path);
}

RunResult cmd_optimize(const ToolConfig& config, const std::string& algorithm,
                       std::optional<std::uint64_t> seed, const std::string& out_dir) {
    AlgorithmConfig alg = algorithm_with_overrides(config, algorithm);
    FitnessSpec spec = make_fitness_spec(config);
    RunConfig rc = config.run;
    if (seed) rc.seed = *seed;

    RunResult result = run(alg, config.search, rc, make_objective(spec));

    ensure_dir(out_dir);
    write_run_csv(result, out_dir + "/" + result.algorithm + "_" +
                              std::to_string(result.seed) + ".csv");
    return result;
}

PosteriorSummary cmd_mcmc(const ToolConfig& config, const std::string& out_dir) {
    FitnessSpec spec = make_fitness_spec(config);
    std::vector<MarkovChain> chains = run_chains(spec, config.mcmc);

    ensure_dir(out_dir);
    for (std::size_t c = 0; c < chains.size(); ++c) {
        const MarkovChain& chain = chains[c];
        std::string path = out_dir + "/chain_" + std::to_string(c) + ".csv";
        auto f = open_out(path);
        f << "state_index,A,B,log_posterior,accepted\n";
        for (std::size_t i = 0; i < chain.length(); ++i) {
            f << i;
            for (std::size_t p = 0; p < chain.dim; ++p) f << ',' << fmt(chain.state(i)[p]);
            f << ',' << fmt(chain.log_posts[i]) << ',' << int(chain.accepted[i]) << '\n';
        }
        finish_out(f, path);
    }

    std::vector<int> burn_ins(chains.size(), config.mcmc.burn_in);
    if (config.mcmc.auto_burn_in)
        for (std::size_t c = 0; c < chains.size(); ++c)
            burn_ins[c] = suggested_burn_in(chains[c]);
    PosteriorSummary summary = pool_chains(chains, burn_ins);

    {
        std::string path = out_dir + "/chains.csv";
        auto f = open_out(path);
        f << "chain,seed,start_scale,acceptance_rate,burn_in,length\n";
        for (std::size_t c = 0; c < chains.size(); ++c)
            f << c << ',' << chains[c].seed << ',' << fmt(config.mcmc.start_scales[c]) << ','
              << fmt(chains[c].acceptance_rate()) << ',' << burn_ins[c] << ','
              << chains[c].length() << '\n';
        finish_out(f, path);
    }

    {
        // Key-value summary, one block per parameter.
        std::string path = out_dir + "/posterior_summary.txt";
        auto f = open_out(path);
        const char* names[2] = {"a", "b"};
        f << "n_pooled = " << summary.n_pooled << "\n";
        for (std::size_t p = 0; p < summary.expected_value.size() && p < 2; ++p) {
            f << names[p] << "_expected_value = " << fmt(summary.expected_value[p]) << "\n"
              << names[p] << "_std = " << fmt(summary.std[p]) << "\n"
              << names[p] << "_pct05 = " << fmt(summary.pct05[p]) << "\n"
              << names[p] << "_pct95 = " << fmt(summary.pct95[p]) << "\n"
              << names[p] << "_kurtosis = " << fmt(summary.kurtosis[p]) << "\n"
              << names[p] << "_skewness = " << fmt(summary.skewness[p]) << "\n";
        }
        finish_out(f, path);
    }

    for (std::size_t p = 0; p < 2 && p < summary.expected_value.size(); ++p) {
        std::vector<double> pooled;
        for (std::size_t c = 0; c < chains.size(); ++c)
            for (std::size_t i = static_cast<std::size_t>(burn_ins[c]); i < chains[c].length(); ++i)
                pooled.push_back(chains[c].state(i)[p]);
        write_histogram_csv(pooled, out_dir + (p == 0 ? "/posterior_hist_a.csv"
                                                      : "/posterior_hist_b.csv"));
    }
    return summary;
}

void cmd_benchmark(const ToolConfig& config, int replicates, const std::string& out_dir) {
    if (replicates < 1) throw config_error("benchmark: replicates must be >= 1");
    FitnessSpec spec = make_fitness_spec(config);
    Objective objective = make_objective(spec);
    const auto& names = algorithm_names();

    std::vector<std::vector<RunResult>> results(names.size());
    for (auto& row : results) row.resize(replicates);
    std::vector<std::exception_ptr> errors(names.size() * replicates);

    parallel_for(names.size() * replicates, resolve_workers(config), [&](std::size_t cell) {
        std::size_t ai = cell / replicates;
        std::size_t r = cell % replicates;
        try {
            AlgorithmConfig alg = algorithm_with_overrides(config, names[ai]);
            RunConfig rc = config.run;
            rc.seed = derive_run_seed(config.run.seed, static_cast<int>(ai), static_cast<int>(r));
            results[ai][r] = run(alg, config.search, rc, objective);
        } catch (...) {
            errors[cell] = std::current_exception();
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    ensure_dir(out_dir);
    ensure_dir(out_dir + "/runs");
    for (const auto& row : results)
        for (const auto& result : row)
            write_run_csv(result, out_dir + "/runs/" + result.algorithm + "_" +
                                      std::to_string(result.seed) + ".csv");

    std::vector<ErrorSummary> error_rows(names.size());
    std::vector<SampleSummary> a_rows(names.size()), b_rows(names.size()), f_rows(names.size());
    std::vector<double> iter_mean(names.size());
    for (std::size_t ai = 0; ai < names.size(); ++ai) {
        std::vector<double> av, bv, fv;
        double iters = 0.0;
        for (const auto& result : results[ai]) {
            av.push_back(result.best_params[0]);
            bv.push_back(result.best_params[1]);
            fv.push_back(result.best_fitness);
            iters += result.iterations_used;
        }
        error_rows[ai] = error_metrics(fv);
        a_rows[ai] = summarize(av);
        b_rows[ai] = summarize(bv);
        f_rows[ai] = summarize(fv);
        iter_mean[ai] = iters / replicates;
        write_histogram_csv(fv, out_dir + "/hist_" + names[ai] + ".csv");
    }

    auto opt = [](const std::optional<double>& v) {
        return v ? fmt(*v) : std::string("nan");
    };

    {
        std::string path = out_dir + "/benchmark_errors.csv";
        auto f = open_out(path);
        f << "algorithm,sum,expected_value,std,max,min\n";
        for (std::size_t ai = 0; ai < names.size(); ++ai) {
            const ErrorSummary& e = error_rows[ai];
            f << names[ai] << ',' << fmt(e.sum) << ',' << fmt(e.expected_value) << ','
              << fmt(e.std) << ',' << fmt(e.max) << ',' << fmt(e.min) << '\n';
        }
        finish_out(f, path);
    }
    {
        std::string path = out_dir + "/benchmark_params.csv";
        auto f = open_out(path);
        f << "algorithm,a_mean,a_std,a_kurtosis,b_mean,b_std,b_kurtosis\n";
        for (std::size_t ai = 0; ai < names.size(); ++ai)
            f << names[ai] << ',' << fmt(a_rows[ai].mean) << ',' << fmt(a_rows[ai].std) << ','
              << opt(a_rows[ai].kurtosis_pearson) << ',' << fmt(b_rows[ai].mean) << ','
              << fmt(b_rows[ai].std) << ',' << opt(b_rows[ai].kurtosis_pearson) << '\n';
        finish_out(f, path);
    }
    {
        std::string path = out_dir + "/plot_mean_std.csv";
        auto f = open_out(path);
        f << "algorithm,fitness_mean,fitness_std\n";
        for (std::size_t ai = 0; ai < names.size(); ++ai)
            f << names[ai] << ',' << fmt(f_rows[ai].mean) << ',' << fmt(f_rows[ai].std) << '\n';
        finish_out(f, path);
    }
    {
        std::string path = out_dir + "/plot_kurtosis.csv";
        auto f = open_out(path);
        f << "algorithm,a_kurtosis,b_kurtosis\n";
        for (std::size_t ai = 0; ai < names.size(); ++ai)
            f << names[ai] << ',' << opt(a_rows[ai].kurtosis_pearson) << ','
              << opt(b_rows[ai].kurtosis_pearson) << '\n';
        finish_out(f, path);
    }
    {
        std::string path = out_dir + "/plot_iterations.csv";
        auto f = open_out(path);
        f << "algorithm,iterations_mean\n";
        for (std::size_t ai = 0; ai < names.size(); ++ai)
            f << names[ai] << ',' << fmt(iter_mean[ai]) << '\n';
        finish_out(f, path);
    }
}

} // namespace castkit
