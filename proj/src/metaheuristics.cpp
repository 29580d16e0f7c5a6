#include "castkit/metaheuristics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <numeric>

#include "castkit/errors.hpp"

namespace castkit {

void SearchSpace::validate() const {
    if (lower.empty() || lower.size() != upper.size())
        throw config_error("search space: lower/upper must be non-empty and equal length");
    for (std::size_t d = 0; d < lower.size(); ++d) {
        if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]))
            throw config_error("search space: bounds must be finite");
        if (!(lower[d] < upper[d]))
            throw config_error("search space: lower < upper required per axis");
    }
}

void RunConfig::validate() const {
    if (n_particles < 2) throw config_error("n_particles must be >= 2");
    if (stall_limit < 1) throw config_error("stall_limit must be >= 1");
    if (max_iterations < stall_limit)
        throw config_error("max_iterations must be >= stall_limit");
}

void clamp(std::vector<double>& candidate, const SearchSpace& space) {
    for (std::size_t d = 0; d < candidate.size(); ++d)
        candidate[d] = std::min(std::max(candidate[d], space.lower[d]), space.upper[d]);
}

namespace {

const char* const kNames[10] = {"pso", "de", "ba", "fpa", "gwo",
                                "mfo", "sca", "woa", "da", "hho"};

} // namespace

const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names(std::begin(kNames), std::end(kNames));
    return names;
}

AlgorithmConfig algorithm_by_name(const std::string& name) {
    if (name == "pso") return PsoConfig{};
    if (name == "de") return DeConfig{};
    if (name == "ba") return BaConfig{};
    if (name == "fpa") return FpaConfig{};
    if (name == "gwo") return GwoConfig{};
    if (name == "mfo") return MfoConfig{};
    if (name == "sca") return ScaConfig{};
    if (name == "woa") return WoaConfig{};
    if (name == "da") return DaConfig{};
    if (name == "hho") return HhoConfig{};
    throw config_error("unknown algorithm '" + name +
                       "' (valid: pso, de, ba, fpa, gwo, mfo, sca, woa, da, hho)");
}

std::string algorithm_name(const AlgorithmConfig& algorithm) {
    return kNames[algorithm.index()];
}

double levy_sigma(double lambda) {
    if (!(lambda > 1.0 && lambda <= 2.0))
        throw std::invalid_argument("levy_sigma: lambda must be in (1, 2]");
    double num = std::tgamma(1.0 + lambda) * std::sin(3.141592653589793 * lambda / 2.0);
    double den = lambda * std::tgamma((1.0 + lambda) / 2.0) *
                 std::pow(2.0, (lambda - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / lambda);
}

double levy_step(double lambda, SplitRng& rng, LevyFlavor flavor) {
    double sigma = levy_sigma(lambda);
    // The denominator draw is resampled away from zero so the step stays finite.
    switch (flavor) {
    case LevyFlavor::fpa: {
        double n = rng.normal01();
        double n1 = rng.normal01();
        while (std::fabs(n1) < 1e-12) n1 = rng.normal01();
        return sigma * n / std::pow(std::fabs(n1), 1.0 / lambda);
    }
    case LevyFlavor::da: {
        double u1 = rng.uniform01();
        double u2 = rng.uniform01();
        while (std::fabs(u2) < 1e-12) u2 = rng.uniform01();
        return 0.01 * u1 * sigma / std::pow(std::fabs(u2), 1.0 / lambda);
    }
    case LevyFlavor::hho: {
        double n = rng.normal01();
        double n1 = rng.normal01();
        while (std::fabs(n1) < 1e-12) n1 = rng.normal01();
        return 0.01 * sigma * n / std::pow(std::fabs(n1), 1.0 / lambda);
    }
    }
    throw std::invalid_argument("levy_step: bad flavor");
}

double encircle_coefficient(int t, int t_max) {
    return 2.0 - 2.0 * static_cast<double>(t) / static_cast<double>(t_max);
}

double sca_amplitude(double a, int t, int t_max) {
    return a - static_cast<double>(t) * a / static_cast<double>(t_max);
}

int mfo_flame_target(int t, int t_max, int n_max) {
    double raw = n_max - static_cast<double>(t) * (n_max - 1) / static_cast<double>(t_max);
    return std::max(1, static_cast<int>(std::floor(raw + 0.5)));
}

double hho_escape_energy(double e0, int t, int t_max) {
    return 2.0 * e0 * (1.0 - static_cast<double>(t) / static_cast<double>(t_max));
}

double ba_pulse_rate(double r0, double gamma, int k) {
    return r0 * (1.0 - std::exp(-gamma * static_cast<double>(k)));
}

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Shared population state plus the substream plan: init draws come from
/// sub(0).sub(i+1), iteration t uses sub(t+1).sub(i+1) per particle and
/// sub(t+1).sub(0) for draws shared by the whole population. Update rules
/// read start-of-iteration snapshots; the best point tracks every single
/// objective evaluation, accepted into the population or not.
struct Driver {
    const SearchSpace& space;
    const RunConfig& cfg;
    const Objective& objective;
    SplitRng root;
    int n;
    std::size_t dim;
    std::vector<std::vector<double>> x;
    std::vector<double> fx;
    std::vector<double> best_x;
    double best_f = std::numeric_limits<double>::infinity();

    Driver(const SearchSpace& s, const RunConfig& c, const Objective& obj)
        : space(s), cfg(c), objective(obj), root(c.seed), n(c.n_particles), dim(s.dim()) {}

    SplitRng init_rng(int i) { return root.sub(0).sub(static_cast<std::uint64_t>(i) + 1); }
    SplitRng iter_rng(int t, int i) {
        return root.sub(static_cast<std::uint64_t>(t) + 1).sub(static_cast<std::uint64_t>(i) + 1);
    }
    SplitRng shared_rng(int t) { return root.sub(static_cast<std::uint64_t>(t) + 1).sub(0); }

    double eval(const std::vector<double>& p) {
        double v = objective(p);
        if (v < best_f) {
            best_f = v;
            best_x = p;
        }
        return v;
    }

    void initialize() {
        x.assign(n, std::vector<double>(dim));
        fx.resize(n);
        for (int i = 0; i < n; ++i) {
            SplitRng rng = init_rng(i);
            for (std::size_t d = 0; d < dim; ++d)
                x[i][d] = rng.uniform(space.lower[d], space.upper[d]);
            fx[i] = eval(x[i]);
        }
    }
};

struct Stepper {
    virtual ~Stepper() = default;
    virtual void init(Driver&) {}
    virtual void step(Driver& d, int t) = 0;
};

struct PsoStepper : Stepper {
    PsoConfig cfg;
    std::vector<std::vector<double>> v, pbest;
    std::vector<double> pbest_f;

    explicit PsoStepper(const PsoConfig& c) : cfg(c) {}

    void init(Driver& d) override {
        v.assign(d.n, std::vector<double>(d.dim, 0.0));
        pbest = d.x;
        pbest_f = d.fx;
    }

    void step(Driver& d, int t) override {
        const std::vector<double> g = d.best_x;
        for (int i = 0; i < d.n; ++i) {
            SplitRng rng = d.iter_rng(t, i);
            for (std::size_t k = 0; k < d.dim; ++k) {
                double u1 = rng.uniform01();
                double u2 = rng.uniform01();
                v[i][k] = cfg.theta * v[i][k] + cfg.alpha * u1 * (g[k] - d.x[i][k]) +
                          cfg.beta * u2 * (pbest[i][k] - d.x[i][k]);
                d.x[i][k] += v[i][k];
            }
            clamp(d.x[i], d.space);
            d.fx[i] = d.eval(d.x[i]);
            if (d.fx[i] < pbest_f[i]) {
                pbest_f[i] = d.fx[i];
                pbest[i] = d.x[i];
            }
        }
    }
};

struct DeStepper : Stepper {
    DeConfig cfg;

    explicit DeStepper(const DeConfig& c) : cfg(c) {}

    void step(Driver& d, int t) override {
        const auto old_x = d.x;
        const auto old_f = d.fx;
        std::vector<double> trial(d.dim);
        for (int i = 0; i < d.n; ++i) {
            SplitRng rng = d.iter_rng(t, i);
            std::array<int, 5> k{};
            int have = 0;
            while (have < 5) {
                int r = rng.uniform_int(d.n);
                if (r == i) continue;
                bool dup = false;
                for (int m = 0; m < have; ++m) dup = dup || k[m] == r;
                if (!dup) k[have++] = r;
            }
            for (std::size_t c = 0; c < d.dim; ++c) {
                double mutant = old_x[k[0]][c] + cfg.f1 * (old_x[k[1]][c] - old_x[k[2]][c]) +
                                cfg.f2 * (old_x[k[3]][c] - old_x[k[4]][c]);
                trial[c] = rng.uniform01() <= cfg.cr ? mutant : old_x[i][c];
            }
            clamp(trial, d.space);
            double ft = d.eval(trial);
            if (ft <= old_f[i]) {
                d.x[i] = trial;
                d.fx[i] = ft;
            }
        }
    }
};

struct BaStepper : Stepper {
    BaConfig cfg;
    std::vector<std::vector<double>> v;
    std::vector<double> loudness, pulse;

    explicit BaStepper(const BaConfig& c) : cfg(c) {}

    void init(Driver& d) override {
        v.assign(d.n, std::vector<double>(d.dim, 0.0));
        loudness.assign(d.n, cfg.loudness0);
        pulse.assign(d.n, cfg.pulse0);
    }

    void step(Driver& d, int t) override {
        const std::vector<double> g = d.best_x;
        double phi_mean = std::accumulate(loudness.begin(), loudness.end(), 0.0) / d.n;
        std::vector<double> cand(d.dim);
        for (int i = 0; i < d.n; ++i) {
            SplitRng rng = d.iter_rng(t, i);
            double freq = cfg.f_min + rng.uniform01() * (cfg.f_max - cfg.f_min);
            for (std::size_t k = 0; k < d.dim; ++k) {
                v[i][k] += freq * (d.x[i][k] - g[k]);
                cand[k] = d.x[i][k] + v[i][k];
            }
            if (rng.uniform01() > pulse[i]) {
                for (std::size_t k = 0; k < d.dim; ++k)
                    cand[k] = d.x[i][k] + cfg.sigma * rng.normal01() * phi_mean;
            }
            clamp(cand, d.space);
            double best_before = d.best_f;
            double fc = d.eval(cand);
            if (rng.uniform01() < loudness[i] && fc < best_before) {
                d.x[i] = cand;
                d.fx[i] = fc;
                loudness[i] *= cfg.alpha;
                pulse[i] = ba_pulse_rate(cfg.pulse0, cfg.gamma, t + 1);
            }
        }
    }
};

struct FpaStepper : Stepper {
    FpaConfig cfg;

    explicit FpaStepper(const FpaConfig& c) : cfg(c) {}

    void step(Driver& d, int t) override {
        const std::vector<double> g = d.best_x;
        const auto old_x = d.x;
        const auto old_f = d.fx;
        std::vector<double> cand(d.dim);
        for (int i = 0; i < d.n; ++i) {
            SplitRng rng = d.iter_rng(t, i);
            if (rng.uniform01() < cfg.p) {
                for (std::size_t k = 0; k < d.dim; ++k) {
                    double step = levy_step(cfg.lambda, rng, LevyFlavor::fpa);
                    cand[k] = old_x[i][k] + cfg.gamma * step * (g[k] - old_x[i][k]);
                }
            } else {
                double eps = rng.uniform01();
                int j = rng.uniform_int(d.n);
                int k2 = rng.uniform_int(d.n);
                while (k2 == j) k2 = rng.uniform_int(d.n);
                for (std::size_t k = 0; k < d.dim; ++k)
                    cand[k] = old_x[i][k] + eps * (old_x[j][k] - old_x[k2][k]);
            }
            clamp(cand, d.space);
            double fc = d.eval(cand);
            if (fc < old_f[i]) {
                d.x[i] = cand;
                d.fx[i] = fc;
            }
        }
    }
};

struct GwoStepper : Stepper {
    std::vector<double> ax, bx, dx;
    double af, bf, df;

    explicit GwoStepper(const GwoConfig&) {}

    void cascade(const std::vector<double>& p, double f) {
        if (f < af) {
            af = f;
            ax = p;
        } else if (f < bf) {
            bf = f;
            bx = p;
        } else if (f < df) {
            df = f;
            dx = p;
        }
    }

    void init(Driver& d) override {
        af = bf = df = std::numeric_limits<double>::infinity();
        ax = bx = dx = d.x[0];
        for (int i = 0; i < d.n; ++i) cascade(d.x[i], d.fx[i]);
    }

    void step(Driver& d, int t) override {
        double a = encircle_coefficient(t, d.cfg.max_iterations);
        const auto old_x = d.x;
        std::vector<double> cand(d.dim);
        const std::vector<double>* leaders[3] = {&ax, &bx, &dx};
        for (int i = 0; i < d.n; ++i) {
            SplitRng rng = d.iter_rng(t, i);
            std::fill(cand.begin(), cand.end(), 0.0);
            for (const auto* leader : leaders) {
                for (std::size_t k = 0; k < d.dim; ++k) {
                    double big_a = 2.0 * a * rng.uniform01() - a;
                    double big_c = 2.0 * rng.uniform01();
                    cand[k] += (*leader)[k] -
                               big_a * std::fabs(big_c * (*leader)[k] - old_x[i][k]);
                }
            }
            for (std::size_t k = 0; k < d.dim; ++k) cand[k] /= 3.0;
            clamp(cand, d.space);
            d.x[i] = cand;
            d.fx[i] = d.eval(cand);
        }
        for (int i = 0; i < d.n; ++i) cascade(d.x[i], d.fx[i]);
    }
};

struct MfoStepper : Stepper {
    MfoConfig cfg;
    std::vector<std::vector<double>> flame_x;
    std::vector<double> flame_f;

    explicit MfoStepper(const MfoConfig& c) : cfg(c) {}

    void sort_into_flames(Driver& d, std::vector<std::vector<double>> xs,
                          std::vector<double> fs) {
        std::vector<std::size_t> order(fs.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        flame_x.clear();
        flame_f.clear();
        for (std::size_t r = 0; r < order.size() && r < static_cast<std::size_t>(d.n); ++r) {
            flame_x.push_back(std::move(xs[order[r]]));
            flame_f.push_back(fs[order[r]]);
        }
    }

    void init(Driver& d) override { sort_into_flames(d, d.x, d.fx); }

    void step(Driver& d, int t) override {
        int fn = mfo_flame_target(t + 1, d.cfg.max_iterations, d.n);
        std::vector<double> cand(d.dim);
        for (int i = 0; i < d.n; ++i) {
            SplitRng rng = d.iter_rng(t, i);
            const auto& flame = flame_x[std::min(i, fn - 1)];
            for (std::size_t k = 0; k < d.dim; ++k) {
                double spiral = -1.0 + 2.0 * rng.uniform01();
                double dist = std::fabs(flame[k] - d.x[i][k]);
                cand[k] = dist * std::exp(cfg.b * spiral) * std::cos(2.0 * kPi * spiral) +
                          flame[k];
            }
            clamp(cand, d.space);
            d.x[i] = cand;
            d.fx[i] = d.eval(cand);
        }
        // Flames for the next iteration: best of previous flames and moths.
        auto xs = flame_x;
        auto fs = flame_f;
        xs.insert(xs.end(), d.x.begin(), d.x.end());
        fs.insert(fs.end(), d.fx.begin(), d.fx.end());
        sort_into_flames(d, std::move(xs), std::move(fs));
    }
};

struct ScaStepper : Stepper {
    ScaConfig cfg;

    explicit ScaStepper(const ScaConfig& c) : cfg(c) {}

    void step(Driver& d, int t) override {
        double amp = sca_amplitude(cfg.a, t, d.cfg.max_iterations);
        const std::vector<double> g = d.best_x;
        for (int i = 0; i < d.n; ++i) {
            SplitRng rng = d.iter_rng(t, i);
            for (std::size_t k = 0; k < d.dim; ++k) {
                double angle = 2.0 * kPi * rng.uniform01();
                double scale = 2.0 * rng.uniform01();
                double wave = rng.uniform01() < 0.5 ? std::sin(angle) : std::cos(angle);
                d.x[i][k] += amp * wave * std::fabs(scale * g[k] - d.x[i][k]);
            }
            clamp(d.x[i], d.space);
            d.fx[i] = d.eval(d.x[i]);
        }
    }
};

struct WoaStepper : Stepper {
    WoaConfig cfg;

    explicit WoaStepper(const WoaConfig& c) : cfg(c) {}

    void step(Driver& d, int t) override {
        double a = encircle_coefficient(t, d.cfg.max_iterations);
        const std::vector<double> g = d.best_x;
        const auto old_x = d.x;
        std::vector<double> cand(d.dim);
        for (int i = 0; i < d.n; ++i) {
            SplitRng rng = d.iter_rng(t, i);
            double big_a = 2.0 * a * rng.uniform01() - a;
            double big_c = 2.0 * rng.uniform01();
            double spiral = -1.0 + 2.0 * rng.uniform01();
            double u3 = rng.uniform01();
            if (u3 < 0.5) {
                const auto& target = std::fabs(big_a) < 1.0
                                         ? g
                                         : old_x[rng.uniform_int(d.n)];
                for (std::size_t k = 0; k < d.dim; ++k)
                    cand[k] = target[k] -
                              big_a * std::fabs(big_c * target[k] - old_x[i][k]);
            } else {
                for (std::size_t k = 0; k < d.dim; ++k) {
                    double dist = std::fabs(g[k] - old_x[i][k]);
                    cand[k] = dist * std::exp(cfg.b * spiral) *
                                  std::cos(2.0 * kPi * spiral) +
                              g[k];
                }
            }
            clamp(cand, d.space);
            d.x[i] = cand;
            d.fx[i] = d.eval(cand);
        }
    }
};

struct DaStepper : Stepper {
    DaConfig cfg;
    std::vector<std::vector<double>> delta;
    std::vector<double> worst_x;
    double worst_f = -std::numeric_limits<double>::infinity();

    explicit DaStepper(const DaConfig& c) : cfg(c) {}

    void note_worst(const std::vector<double>& p, double f) {
        if (f > worst_f) {
            worst_f = f;
            worst_x = p;
        }
    }

    void init(Driver& d) override {
        delta.assign(d.n, std::vector<double>(d.dim, 0.0));
        for (int i = 0; i < d.n; ++i) note_worst(d.x[i], d.fx[i]);
    }

    void step(Driver& d, int t) override {
        double tt = static_cast<double>(t);
        double tm = static_cast<double>(d.cfg.max_iterations);
        double w = cfg.w_start - tt * (cfg.w_start - cfg.w_end) / tm;
        double my_c = std::max(0.0, cfg.c_decay - tt * cfg.c_decay / (tm / 2.0));
        SplitRng shared = d.shared_rng(t);
        double s = 2.0 * shared.uniform01() * my_c;
        double a = 2.0 * shared.uniform01() * my_c;
        double c = 2.0 * shared.uniform01() * my_c;
        double f = 2.0 * shared.uniform01();
        double e = my_c;

        double diag2 = 0.0;
        for (std::size_t k = 0; k < d.dim; ++k) {
            double span = d.space.upper[k] - d.space.lower[k];
            diag2 += span * span;
        }
        double radius = std::sqrt(diag2) *
                        (cfg.radius_start + (cfg.radius_end - cfg.radius_start) * tt / tm);

        const std::vector<double> food = d.best_x;
        const std::vector<double> enemy = worst_x;
        const auto old_x = d.x;
        const auto old_delta = delta;

        auto within = [&](const std::vector<double>& p, const std::vector<double>& q) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < p.size(); ++k) {
                double diff = p[k] - q[k];
                d2 += diff * diff;
            }
            return std::sqrt(d2) <= radius;
        };

        std::vector<double> cand(d.dim);
        for (int i = 0; i < d.n; ++i) {
            SplitRng rng = d.iter_rng(t, i);
            std::vector<int> nb;
            for (int j = 0; j < d.n; ++j)
                if (j != i && within(old_x[j], old_x[i])) nb.push_back(j);

            if (nb.empty()) {
                for (std::size_t k = 0; k < d.dim; ++k) {
                    double step = levy_step(cfg.lambda, rng, LevyFlavor::da);
                    cand[k] = old_x[i][k] + step * old_x[i][k];
                    delta[i][k] = 0.0;
                }
            } else {
                bool sees_food = within(food, old_x[i]);
                bool sees_enemy = within(enemy, old_x[i]);
                for (std::size_t k = 0; k < d.dim; ++k) {
                    double sep = 0.0, ali = 0.0, coh = 0.0;
                    for (int j : nb) {
                        sep -= old_x[i][k] - old_x[j][k];
                        ali += old_delta[j][k];
                        coh += old_x[j][k];
                    }
                    ali /= nb.size();
                    coh = coh / nb.size() - old_x[i][k];
                    double food_term = sees_food ? food[k] - old_x[i][k] : 0.0;
                    double enemy_term = sees_enemy ? enemy[k] - old_x[i][k] : 0.0;
                    delta[i][k] = s * sep + a * ali + c * coh + f * food_term +
                                  e * enemy_term + w * old_delta[i][k];
                    cand[k] = old_x[i][k] + delta[i][k];
                }
            }
            clamp(cand, d.space);
            d.x[i] = cand;
            d.fx[i] = d.eval(cand);
            note_worst(d.x[i], d.fx[i]);
        }
    }
};

struct HhoStepper : Stepper {
    HhoConfig cfg;

    explicit HhoStepper(const HhoConfig& c) : cfg(c) {}

    void step(Driver& d, int t) override {
        const std::vector<double> g = d.best_x;
        const auto old_x = d.x;
        const auto old_f = d.fx;
        std::vector<double> mean(d.dim, 0.0);
        for (int i = 0; i < d.n; ++i)
            for (std::size_t k = 0; k < d.dim; ++k) mean[k] += old_x[i][k] / d.n;

        std::vector<double> cand(d.dim), dive(d.dim);
        for (int i = 0; i < d.n; ++i) {
            SplitRng rng = d.iter_rng(t, i);
            double e0 = 2.0 * rng.uniform01() - 1.0;
            double energy = hho_escape_energy(e0, t, d.cfg.max_iterations);
            if (std::fabs(energy) >= 1.0) {
                double u5 = rng.uniform01();
                if (u5 >= 0.5) {
                    int k1 = rng.uniform_int(d.n);
                    double u1 = rng.uniform01();
                    double u2 = rng.uniform01();
                    for (std::size_t k = 0; k < d.dim; ++k)
                        cand[k] = old_x[k1][k] -
                                  u1 * std::fabs(old_x[k1][k] - 2.0 * u2 * old_x[i][k]);
                } else {
                    double u3 = rng.uniform01();
                    double u4 = rng.uniform01();
                    for (std::size_t k = 0; k < d.dim; ++k)
                        cand[k] = (g[k] - mean[k]) -
                                  u3 * (d.space.lower[k] +
                                        u4 * (d.space.upper[k] - d.space.lower[k]));
                }
                clamp(cand, d.space);
                d.x[i] = cand;
                d.fx[i] = d.eval(cand);
                continue;
            }

            double u6 = rng.uniform01();
            double jump = 2.0 * (1.0 - u6);
            bool soft = std::fabs(energy) >= 0.5;
            if (u6 >= 0.5) {
                for (std::size_t k = 0; k < d.dim; ++k) {
                    double dx = std::fabs(g[k] - old_x[i][k]);
                    cand[k] = soft ? dx - energy * std::fabs(jump * g[k] - old_x[i][k])
                                   : g[k] - energy * dx;
                }
                clamp(cand, d.space);
                d.x[i] = cand;
                d.fx[i] = d.eval(cand);
                continue;
            }

            // Progressive rapid dives: try y, then y plus a Levy kick, else stay.
            for (std::size_t k = 0; k < d.dim; ++k) {
                double anchor = soft ? old_x[i][k] : mean[k];
                cand[k] = g[k] - energy * std::fabs(jump * g[k] - anchor);
            }
            clamp(cand, d.space);
            double fy = d.eval(cand);
            if (fy < old_f[i]) {
                d.x[i] = cand;
                d.fx[i] = fy;
                continue;
            }
            double u7 = rng.uniform01();
            for (std::size_t k = 0; k < d.dim; ++k)
                dive[k] = cand[k] + u7 * levy_step(cfg.lambda, rng, LevyFlavor::hho);
            clamp(dive, d.space);
            double fz = d.eval(dive);
            if (fz < old_f[i]) {
                d.x[i] = dive;
                d.fx[i] = fz;
            }
        }
    }
};

std::unique_ptr<Stepper> make_stepper(const AlgorithmConfig& algorithm) {
    return std::visit(
        [](const auto& c) -> std::unique_ptr<Stepper> {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, PsoConfig>) return std::make_unique<PsoStepper>(c);
            else if constexpr (std::is_same_v<T, DeConfig>) return std::make_unique<DeStepper>(c);
            else if constexpr (std::is_same_v<T, BaConfig>) return std::make_unique<BaStepper>(c);
            else if constexpr (std::is_same_v<T, FpaConfig>) return std::make_unique<FpaStepper>(c);
            else if constexpr (std::is_same_v<T, GwoConfig>) return std::make_unique<GwoStepper>(c);
            else if constexpr (std::is_same_v<T, MfoConfig>) return std::make_unique<MfoStepper>(c);
            else if constexpr (std::is_same_v<T, ScaConfig>) return std::make_unique<ScaStepper>(c);
            else if constexpr (std::is_same_v<T, WoaConfig>) return std::make_unique<WoaStepper>(c);
            else if constexpr (std::is_same_v<T, DaConfig>) return std::make_unique<DaStepper>(c);
            else return std::make_unique<HhoStepper>(c);
        },
        algorithm);
}

int min_population(const AlgorithmConfig& algorithm) {
    if (std::holds_alternative<DeConfig>(algorithm)) return 6;  // target plus five partners
    if (std::holds_alternative<GwoConfig>(algorithm)) return 3; // alpha, beta, delta
    if (std::holds_alternative<FpaConfig>(algorithm)) return 2; // distinct local partners
    return 1;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

} // namespace

RunResult run(const AlgorithmConfig& algorithm, const SearchSpace& space,
              const RunConfig& config, const Objective& objective) {
    space.validate();
    config.validate();
    if (!objective) throw config_error("run: objective must be set");
    if (config.n_particles < min_population(algorithm))
        throw config_error(algorithm_name(algorithm) + " needs at least " +
                           std::to_string(min_population(algorithm)) + " particles");

    Driver d(space, config, objective);
    d.initialize();
    auto stepper = make_stepper(algorithm);
    stepper->init(d);

    RunResult result;
    result.algorithm = algorithm_name(algorithm);
    result.seed = config.seed;
    result.fitness_trace.push_back(d.best_f);
    result.param_trace.push_back(d.best_x);

    std::vector<double> last_best = d.best_x;
    int streak = 0;
    for (int t = 0; t < config.max_iterations; ++t) {
        stepper->step(d, t);
        result.fitness_trace.push_back(d.best_f);
        result.param_trace.push_back(d.best_x);
        result.iterations_used = t + 1;
        if (bits_equal(d.best_x, last_best)) {
            if (++streak >= config.stall_limit) break;
        } else {
            streak = 0;
            last_best = d.best_x;
        }
    }

    result.best_params = d.best_x;
    result.best_fitness = d.best_f;
    return result;
}

} // namespace castkit
