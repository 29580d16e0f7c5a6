#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "castkit/errors.hpp"
#include "castkit/fvm.hpp"
#include "castkit/rng.hpp"

using namespace castkit;

namespace {

const AlloyProperties kAlloy{};
const BoundarySpec kBoundary{300.0, 973.0};

// Constant-property fully-solid material: the mushy window sits far above
// every temperature the tests visit, so fs = 1 throughout.
AlloyProperties solid_only() {
    AlloyProperties a;
    a.T_sol = 1200.0;
    a.T_liq = 1210.0;
    a.T_f = 1220.0;
    return a;
}

} // namespace

TEST_CASE("insulated domain holds the initial temperature") {
    MeshSpec mesh{0.06, 20, 0.1, 10.0, 0.0};
    IhtcParams off{0.0, 0.0, 1.0};
    ThermalHistory h = simulate(kAlloy, mesh, kBoundary, off, {0.004, 0.03});
    for (const auto& trace : h.temperatures)
        for (double T : trace) CHECK(T == doctest::Approx(973.0).epsilon(1e-12));
}

TEST_CASE("field already at the sink temperature stays there") {
    AlloyProperties alloy = solid_only();
    BoundarySpec boundary{300.0, 300.0};
    IhtcParams strong{5000.0, -0.1, 1.0};
    std::vector<double> T(24, 300.0);
    StepWorkspace ws;
    double dz = 0.06 / 24;
    for (int s = 1; s <= 50; ++s)
        advance_step(T, 0.05 * s, 0.05, alloy, boundary, strong, dz, ws);
    for (double v : T) CHECK(v == doctest::Approx(300.0).epsilon(1e-12));
}

TEST_CASE("active cooling produces cooling probe traces") {
    MeshSpec mesh{0.06, 30, 0.05, 40.0, 0.0};
    IhtcParams ihtc{6301.0, -0.147, 1.0};
    ThermalHistory h = simulate(kAlloy, mesh, kBoundary, ihtc, {0.004, 0.008, 0.012});
    // Strictly monotone while liquid. Below the solidus the specific-heat
    // cutoff lets cells reheat a little as the front passes (recalescence),
    // so only rises beyond that scale count as failures.
    double rebound = 1e-3 * (973.0 - 300.0);
    for (const auto& trace : h.temperatures)
        for (std::size_t i = 1; i < trace.size(); ++i) {
            if (trace[i] > kAlloy.T_liq && trace[i - 1] > kAlloy.T_liq)
                CHECK(trace[i] <= trace[i - 1] + 1e-9);
            CHECK(trace[i] <= trace[i - 1] + rebound);
        }
}

TEST_CASE("temperatures stay between sink and initial values") {
    SplitRng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        MeshSpec mesh{0.05, 12 + rng.uniform_int(20), 0.05 + rng.uniform01() * 0.1, 20.0, 0.0};
        IhtcParams ihtc{rng.uniform(500.0, 9000.0), rng.uniform(-0.4, -0.01), 1.0};
        ThermalHistory h = simulate(kAlloy, mesh, kBoundary, ihtc, {0.002, 0.025});
        for (const auto& trace : h.temperatures)
            for (double T : trace) {
                CHECK(T >= 300.0 - 1e-9);
                CHECK(T <= 973.0 + 1e-9);
            }
    }
}

TEST_CASE("a zero-length step leaves the field unchanged") {
    std::vector<double> T{973.0, 950.0, 920.0, 880.0, 840.0, 800.0};
    std::vector<double> before = T;
    StepWorkspace ws;
    IhtcParams ihtc{6301.0, -0.147, 1.0};
    double extracted = advance_step(T, 1.0, 0.0, kAlloy, kBoundary, ihtc, 0.01, ws);
    CHECK(extracted == 0.0);
    for (std::size_t i = 0; i < T.size(); ++i)
        CHECK(T[i] == doctest::Approx(before[i]).epsilon(1e-14));
}

TEST_CASE("per-step enthalpy change equals the extracted boundary heat") {
    std::vector<double> T{960.0, 940.0, 905.0, 875.0, 860.0, 830.0, 810.0};
    StepWorkspace ws;
    IhtcParams ihtc{4000.0, -0.2, 1.0};
    double dz = 0.06 / 7;
    for (int s = 1; s <= 200; ++s) {
        std::vector<double> before = T;
        double extracted = advance_step(T, 0.05 * s, 0.05, kAlloy, kBoundary, ihtc, dz, ws);
        double change = 0.0;
        for (std::size_t i = 0; i < T.size(); ++i)
            change += ws.cap[i] * (T[i] - before[i]);
        CHECK(change == doctest::Approx(-extracted).epsilon(1e-9));
    }
}

TEST_CASE("insulated stepping conserves enthalpy over a long run") {
    std::vector<double> T;
    for (int i = 0; i < 30; ++i) T.push_back(973.0 - 5.0 * i);
    StepWorkspace ws;
    IhtcParams off{0.0, 0.0, 1.0};
    double dz = 0.06 / 30;
    double drift = 0.0, scale = 0.0;
    for (int s = 1; s <= 1000; ++s) {
        std::vector<double> before = T;
        double extracted = advance_step(T, 0.05 * s, 0.05, kAlloy, kBoundary, off, dz, ws);
        CHECK(extracted == 0.0);
        double change = 0.0, mag = 0.0;
        for (std::size_t i = 0; i < T.size(); ++i) {
            change += ws.cap[i] * (T[i] - before[i]);
            mag += ws.cap[i] * std::fabs(before[i]);
        }
        drift += change;
        scale = mag;
    }
    CHECK(std::fabs(drift) < 1e-6 * scale);
}

TEST_CASE("constant-property slab matches the analytic convective solution") {
    AlloyProperties alloy = solid_only();
    const double k = alloy.k_s, rho = alloy.rho_s, c = alloy.c_s, hc = 3000.0;
    const double alpha = k / (rho * c);
    const double T_init = 800.0, T_env = 300.0;

    auto theta_analytic = [&](double z, double t) {
        double zeta = z / (2.0 * std::sqrt(alpha * t));
        double arg = zeta + hc * std::sqrt(alpha * t) / k;
        return std::erfc(zeta) -
               std::exp(hc * z / k + hc * hc * alpha * t / (k * k)) * std::erfc(arg);
    };
    CHECK(std::fabs(theta_analytic(0.005, 10.0) - 0.295643) < 2e-6);

    const int n = 300;
    const double dz = 0.15 / n, dt = 0.005;
    BoundarySpec boundary{T_env, T_init};
    IhtcParams constant_h{hc, 0.0, 1.0};
    std::vector<double> T(n, T_init);
    StepWorkspace ws;
    double worst = 0.0;
    int steps = 2000;
    for (int s = 1; s <= steps; ++s) {
        double t = dt * s;
        advance_step(T, t, dt, alloy, boundary, constant_h, dz, ws);
        if (s == 400 || s == 1000 || s == 2000) {
            for (int i = 2; i < 40; ++i) {
                double z = (i + 0.5) * dz;
                double th_num = (T[i] - T_init) / (T_env - T_init);
                worst = std::max(worst, std::fabs(th_num - theta_analytic(z, t)));
            }
        }
    }
    CHECK(worst < 0.01);
}

TEST_CASE("halving the time step converges at first order or better") {
    IhtcParams ihtc{6301.0, -0.147, 1.0};
    auto probe_at_end = [&](double dt) {
        MeshSpec mesh{0.06, 48, dt, 6.0, 0.0};
        ThermalHistory h = simulate(kAlloy, mesh, kBoundary, ihtc, {0.012});
        return h.temperatures[0].back();
    };
    double coarse = probe_at_end(0.08);
    double mid = probe_at_end(0.04);
    double fine = probe_at_end(0.02);
    double d1 = std::fabs(coarse - mid);
    double d2 = std::fabs(mid - fine);
    REQUIRE(d2 > 1e-9);
    double order = std::log2(d1 / d2);
    CHECK(order >= 0.9);
}

TEST_CASE("latent heat slows cooling inside the mushy window") {
    MeshSpec mesh{0.06, 40, 0.05, 150.0, 0.0};
    IhtcParams ihtc{6301.0, -0.147, 1.0};
    ThermalHistory h = simulate(kAlloy, mesh, kBoundary, ihtc, {0.008});
    const std::vector<double>& trace = h.temperatures[0];
    double mushy_rate = 0.0, liquid_rate = 0.0;
    int mushy_n = 0, liquid_n = 0;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        double mid = 0.5 * (trace[i] + trace[i - 1]);
        double rate = std::fabs(trace[i] - trace[i - 1]) / (h.times[i] - h.times[i - 1]);
        if (mid > kAlloy.T_sol && mid < kAlloy.T_liq) {
            mushy_rate += rate;
            ++mushy_n;
        } else if (mid >= kAlloy.T_liq && mid < kAlloy.T_liq + 40.0) {
            liquid_rate += rate;
            ++liquid_n;
        }
    }
    REQUIRE(mushy_n > 0);
    REQUIRE(liquid_n > 0);
    CHECK(mushy_rate / mushy_n < liquid_rate / liquid_n);
}

TEST_CASE("simulation runs the documented number of uniform steps") {
    MeshSpec mesh{0.06, 10, 0.1, 1.0, 0.0};
    IhtcParams ihtc{1000.0, -0.1, 1.0};
    ThermalHistory h = simulate(kAlloy, mesh, kBoundary, ihtc, {0.03});
    CHECK(h.times.size() == 11);
    CHECK(h.times.front() == 0.0);
    CHECK(h.times.back() == doctest::Approx(1.0).epsilon(1e-12));

    MeshSpec ragged{0.06, 10, 0.3, 1.0, 0.0};
    ThermalHistory h2 = simulate(kAlloy, ragged, kBoundary, ihtc, {0.03});
    CHECK(h2.times.size() == 5);
    CHECK(h2.times.back() == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("output interval thins the recorded samples") {
    MeshSpec mesh{0.06, 10, 0.1, 10.0, 1.0};
    IhtcParams ihtc{1000.0, -0.1, 1.0};
    ThermalHistory h = simulate(kAlloy, mesh, kBoundary, ihtc, {0.03});
    CHECK(h.times.size() == 11);
    for (std::size_t i = 0; i < h.times.size(); ++i)
        CHECK(h.times[i] == doctest::Approx(double(i)).epsilon(1e-9));
}

TEST_CASE("requested probe positions are recorded verbatim") {
    MeshSpec mesh{0.06, 10, 0.1, 1.0, 0.0};
    IhtcParams ihtc{1000.0, -0.1, 1.0};
    ThermalHistory h = simulate(kAlloy, mesh, kBoundary, ihtc, {0.004, 0.008});
    REQUIRE(h.positions.size() == 2);
    CHECK(h.positions[0] == 0.004);
    CHECK(h.positions[1] == 0.008);
}

TEST_CASE("nearest-sample lookup") {
    ThermalHistory h;
    h.times = {0.0, 1.0, 2.0};
    h.positions = {0.004, 0.008};
    h.temperatures = {{900.0, 890.0, 880.0}, {910.0, 905.0, 900.0}};

    CHECK(sample_at(h, 0.004, 1.0) == 890.0);
    CHECK(sample_at(h, 0.008, 2.0) == 900.0);
    CHECK(sample_at(h, 0.004, 1.4) == 890.0);
    CHECK(sample_at(h, 0.004, 1.6) == 880.0);
    CHECK(sample_at(h, 0.004, 1.5) == 890.0);
    CHECK(sample_at(h, 0.0055, 0.0) == 900.0);

    CHECK_THROWS_AS(sample_at(h, -0.001, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_at(h, 0.004, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(sample_at(h, 0.004, -0.1), std::invalid_argument);
}

TEST_CASE("history export uses millimetre headers and six decimals") {
    ThermalHistory h;
    h.times = {0.0, 0.5};
    h.positions = {0.004, 0.012};
    h.temperatures = {{973.0, 950.125}, {973.0, 960.0}};
    std::string csv = history_to_csv(h);
    CHECK(csv.rfind("time_s,pos_4,pos_12\n", 0) == 0);
    CHECK(csv.find("0.500000,950.125000,960.000000\n") != std::string::npos);
    CHECK(csv == history_to_csv(h));
}

TEST_CASE("input validation rejects bad meshes, boundaries and probes") {
    IhtcParams ihtc{1000.0, -0.1, 1.0};
    CHECK_THROWS_AS(simulate(kAlloy, MeshSpec{0.06, 2, 0.1, 1.0, 0.0}, kBoundary, ihtc, {0.03}),
                    config_error);
    CHECK_THROWS_AS(simulate(kAlloy, MeshSpec{0.06, 10, 0.0, 1.0, 0.0}, kBoundary, ihtc, {0.03}),
                    config_error);
    CHECK_THROWS_AS(simulate(kAlloy, MeshSpec{0.06, 10, 0.1, 0.05, 0.0}, kBoundary, ihtc, {0.03}),
                    config_error);
    CHECK_THROWS_AS(
        simulate(kAlloy, MeshSpec{0.06, 10, 0.1, 1.0, 0.0}, BoundarySpec{973.0, 973.0}, ihtc, {0.03}),
        config_error);
    CHECK_THROWS_AS(
        simulate(kAlloy, MeshSpec{0.06, 10, 0.1, 1.0, 0.0}, BoundarySpec{300.0, 880.0}, ihtc, {0.03}),
        config_error);
    CHECK_THROWS_AS(simulate(kAlloy, MeshSpec{0.06, 10, 0.1, 1.0, 0.0}, kBoundary, ihtc, {0.07}),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate(kAlloy, MeshSpec{0.06, 10, 0.1, 1.0, 0.0}, kBoundary, ihtc, {-0.001}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        simulate(kAlloy, MeshSpec{0.06, 10, 0.1, 1.0, 0.0}, kBoundary, ihtc, std::vector<double>{}),
        std::invalid_argument);
}
