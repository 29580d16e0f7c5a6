#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "castkit/alloy.hpp"
#include "castkit/errors.hpp"
#include "castkit/rng.hpp"

using namespace castkit;

namespace {
const AlloyProperties kAlloy{};
}

TEST_CASE("solid fraction endpoints and clamping") {
    CHECK(solid_fraction(kAlloy.T_liq, kAlloy) == 0.0);
    CHECK(solid_fraction(kAlloy.T_liq + 50.0, kAlloy) == 0.0);
    CHECK(solid_fraction(kAlloy.T_sol, kAlloy) == 1.0);
    CHECK(solid_fraction(kAlloy.T_sol - 10.0, kAlloy) == 1.0);
}

TEST_CASE("solid fraction mid-mushy value") {
    CHECK(solid_fraction(880.0, kAlloy) ==
          doctest::Approx(0.21363592955002408).epsilon(1e-12));
}

TEST_CASE("solid fraction rejects non-finite temperature") {
    CHECK_THROWS_AS(solid_fraction(std::numeric_limits<double>::quiet_NaN(), kAlloy),
                    std::invalid_argument);
    CHECK_THROWS_AS(solid_fraction(std::numeric_limits<double>::infinity(), kAlloy),
                    std::invalid_argument);
    CHECK_THROWS_AS(dfs_dT(std::numeric_limits<double>::quiet_NaN(), kAlloy),
                    std::invalid_argument);
}

TEST_CASE("solid fraction is monotone non-increasing") {
    SplitRng rng(11);
    for (int i = 0; i < 2000; ++i) {
        double a = rng.uniform(800.0, 950.0);
        double b = rng.uniform(800.0, 950.0);
        if (a > b) std::swap(a, b);
        CHECK(solid_fraction(a, kAlloy) >= solid_fraction(b, kAlloy));
    }
}

TEST_CASE("fraction derivative is zero outside the mushy zone and non-positive inside") {
    CHECK(dfs_dT(kAlloy.T_liq + 1.0, kAlloy) == 0.0);
    CHECK(dfs_dT(kAlloy.T_sol - 1.0, kAlloy) == 0.0);
    for (double T = kAlloy.T_sol + 0.5; T < kAlloy.T_liq; T += 0.5)
        CHECK(dfs_dT(T, kAlloy) <= 0.0);
}

TEST_CASE("fraction derivative matches central finite differences") {
    const double eps = 1e-4;
    for (double T = kAlloy.T_sol + 1.0; T <= kAlloy.T_liq - 1.0; T += 0.25) {
        double fd = (solid_fraction(T + eps, kAlloy) - solid_fraction(T - eps, kAlloy)) /
                    (2.0 * eps);
        double analytic = dfs_dT(T, kAlloy);
        CHECK(std::fabs(fd - analytic) <= 1e-6 * std::fabs(analytic));
    }
}

TEST_CASE("effective properties reduce to pure phases") {
    EffectiveProperties liq = effective_properties(kAlloy.T_liq + 5.0, kAlloy);
    CHECK(liq.cp_pseudo == kAlloy.c_l);
    CHECK(liq.k == kAlloy.k_l);
    CHECK(liq.rho == kAlloy.rho_l);

    EffectiveProperties sol = effective_properties(kAlloy.T_sol - 5.0, kAlloy);
    CHECK(sol.cp_pseudo == kAlloy.c_s);
    CHECK(sol.k == kAlloy.k_s);
    CHECK(sol.rho == kAlloy.rho_s);
}

TEST_CASE("mid-mushy mixture follows the computed fraction") {
    double T = 880.0;
    double fs = solid_fraction(T, kAlloy);
    EffectiveProperties p = effective_properties(T, kAlloy);
    CHECK(p.k == doctest::Approx(fs * kAlloy.k_s + (1.0 - fs) * kAlloy.k_l).epsilon(1e-14));
    CHECK(p.rho ==
          doctest::Approx(fs * kAlloy.rho_s + (1.0 - fs) * kAlloy.rho_l).epsilon(1e-14));
    double c_m = fs * kAlloy.c_s + (1.0 - fs) * kAlloy.c_l;
    CHECK(p.cp_pseudo >= c_m);
}

TEST_CASE("effective properties stay within pure-phase bounds") {
    SplitRng rng(7);
    double c_floor = std::min(kAlloy.c_s, kAlloy.c_l);
    for (int i = 0; i < 2000; ++i) {
        double T = rng.uniform(700.0, 1000.0);
        EffectiveProperties p = effective_properties(T, kAlloy);
        CHECK(p.k >= std::min(kAlloy.k_s, kAlloy.k_l));
        CHECK(p.k <= std::max(kAlloy.k_s, kAlloy.k_l));
        CHECK(p.rho >= std::min(kAlloy.rho_s, kAlloy.rho_l));
        CHECK(p.rho <= std::max(kAlloy.rho_s, kAlloy.rho_l));
        CHECK(p.cp_pseudo >= c_floor);
    }
}

TEST_CASE("latent heat only enlarges the pseudo specific heat") {
    for (double T = kAlloy.T_sol + 0.25; T < kAlloy.T_liq; T += 0.25) {
        double fs = solid_fraction(T, kAlloy);
        double c_m = fs * kAlloy.c_s + (1.0 - fs) * kAlloy.c_l;
        CHECK(effective_properties(T, kAlloy).cp_pseudo >= c_m);
    }
}

TEST_CASE("alloy validation rejects broken property sets") {
    AlloyProperties bad = kAlloy;
    bad.k_s = 0.0;
    CHECK_THROWS_AS(bad.validate(), config_error);

    bad = kAlloy;
    bad.L = -1.0;
    CHECK_THROWS_AS(bad.validate(), config_error);

    bad = kAlloy;
    bad.T_sol = bad.T_liq;
    CHECK_THROWS_AS(bad.validate(), config_error);

    bad = kAlloy;
    bad.T_liq = bad.T_f + 1.0;
    CHECK_THROWS_AS(bad.validate(), config_error);

    bad = kAlloy;
    bad.k0 = 1.0;
    CHECK_THROWS_AS(bad.validate(), config_error);

    bad = kAlloy;
    bad.k0 = 0.0;
    CHECK_THROWS_AS(bad.validate(), config_error);

    CHECK_NOTHROW(kAlloy.validate());
}
