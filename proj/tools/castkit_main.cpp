#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "castkit/errors.hpp"
#include "castkit/harness.hpp"

namespace {

std::string pick_out(const std::string& flag, const castkit::ToolConfig& config) {
    return flag.empty() ? config.output_dir : flag;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casting-solidification toolkit: forward solver, inverse optimizers, MCMC"};
    app.require_subcommand(1);

    std::string sim_config, sim_out;
    double sim_a = 0.0, sim_b = 0.0;
    auto* sim = app.add_subcommand("simulate", "Run one forward simulation and write the probe CSV");
    sim->add_option("--config", sim_config, "configuration file")->required();
    auto* sim_a_opt = sim->add_option("--a", sim_a, "heat-transfer amplitude (W/m^2 K)");
    auto* sim_b_opt = sim->add_option("--b", sim_b, "heat-transfer time exponent");
    sim->add_option("--out", sim_out, "output directory (default: from config)");

    std::string opt_config, opt_algorithm, opt_out;
    std::uint64_t opt_seed = 0;
    auto* opt = app.add_subcommand("optimize", "Estimate (A, B) with one metaheuristic");
    opt->add_option("--config", opt_config, "configuration file")->required();
    opt->add_option("--algorithm", opt_algorithm, "optimizer name")->required();
    auto* opt_seed_opt = opt->add_option("--seed", opt_seed, "run seed (default: from config)");
    opt->add_option("--out", opt_out, "output directory (default: from config)");

    std::string mcmc_config, mcmc_out;
    auto* mcmc = app.add_subcommand("mcmc", "Sample the (A, B) posterior with Metropolis-Hastings");
    mcmc->add_option("--config", mcmc_config, "configuration file")->required();
    mcmc->add_option("--out", mcmc_out, "output directory (default: from config)");

    std::string bench_config, bench_out;
    int bench_replicates = 0;
    auto* bench = app.add_subcommand("benchmark", "Run all ten optimizers over replicates and tabulate");
    bench->add_option("--config", bench_config, "configuration file")->required();
    bench->add_option("--replicates", bench_replicates, "runs per algorithm (default: from config)");
    bench->add_option("--out", bench_out, "output directory (default: from config)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            castkit::ToolConfig config = castkit::parse_config(sim_config);
            double A = sim_a_opt->count() ? sim_a : config.experiment.true_a;
            double B = sim_b_opt->count() ? sim_b : config.experiment.true_b;
            std::string dir = pick_out(sim_out, config);
            std::filesystem::create_directories(dir);
            std::string path = dir + "/simulation.csv";
            castkit::cmd_simulate(config, A, B, path);
            std::printf("wrote %s\n", path.c_str());
        } else if (opt->parsed()) {
            castkit::ToolConfig config = castkit::parse_config(opt_config);
            std::optional<std::uint64_t> seed;
            if (opt_seed_opt->count()) seed = opt_seed;
            castkit::RunResult result =
                castkit::cmd_optimize(config, opt_algorithm, seed, pick_out(opt_out, config));
            std::printf("algorithm=%s seed=%llu iterations=%d\n", result.algorithm.c_str(),
                        static_cast<unsigned long long>(result.seed), result.iterations_used);
            std::printf("best: A=%.10g B=%.10g fitness=%.10g\n", result.best_params[0],
                        result.best_params[1], result.best_fitness);
        } else if (mcmc->parsed()) {
            castkit::ToolConfig config = castkit::parse_config(mcmc_config);
            castkit::PosteriorSummary summary =
                castkit::cmd_mcmc(config, pick_out(mcmc_out, config));
            std::printf("pooled states: %zu\n", summary.n_pooled);
            const char* names[2] = {"A", "B"};
            for (std::size_t p = 0; p < summary.expected_value.size() && p < 2; ++p)
                std::printf("%s: expected=%.10g std=%.10g [%.10g, %.10g]\n", names[p],
                            summary.expected_value[p], summary.std[p], summary.pct05[p],
                            summary.pct95[p]);
        } else if (bench->parsed()) {
            castkit::ToolConfig config = castkit::parse_config(bench_config);
            int replicates = bench_replicates > 0 ? bench_replicates : config.replicates;
            std::string dir = pick_out(bench_out, config);
            castkit::cmd_benchmark(config, replicates, dir);
            std::printf("wrote benchmark tables to %s\n", dir.c_str());
        }
        return 0;
    } catch (const castkit::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const castkit::data_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const castkit::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
