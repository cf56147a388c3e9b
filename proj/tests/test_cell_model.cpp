#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nomacell/cell_model.hpp"

using namespace nomacell;
using doctest::Approx;

namespace {

// Reference deployment: 8 users in a 50 m cell, SE 5 (gamma* = 31),
// K and eta from the 3GPP-style fit, noise calibrated to the 24 dBm anchor.
CellParams reference_cell() {
    CellParams p;
    p.cell_radius_m = 50.0;
    p.min_distance_m = 0.0;
    p.pathloss_exponent = 3.57;
    p.pathloss_constant = 2.66e-4;
    p.noise_w = 5.8579285488622767e-13;
    p.user_density = density_from_users_per_cell(8.0, 50.0);
    p.sinr_target = 31.0;
    return p;
}

}  // namespace

TEST_CASE("coefficients: zeta, beta and friends from first principles") {
    const CellParams p = reference_cell();
    const Coefficients co = derive_coefficients(p);

    CHECK(co.zeta == Approx(32.0 / 31.0).epsilon(1e-15));
    CHECK(co.beta2 == Approx(8.0).epsilon(1e-14));          // pi rho R_c^2 = n
    CHECK(co.beta == Approx(7.75).epsilon(1e-14));          // beta2 / zeta
    CHECK(co.a == Approx(2.0 * std::numbers::pi * p.user_density / co.zeta).epsilon(1e-15));
    CHECK(co.c == Approx(p.noise_w / p.pathloss_constant).epsilon(1e-15));
    CHECK(co.b == Approx(co.c * p.pathloss_exponent / co.zeta).epsilon(1e-15));
}

TEST_CASE("parameter validation names the offending field") {
    CellParams p = reference_cell();

    p.cell_radius_m = 0.0;
    CHECK_THROWS_WITH_AS(p.check(), "cell_radius_m must be > 0", std::invalid_argument);

    p = reference_cell();
    p.min_distance_m = 60.0;
    CHECK_THROWS_WITH_AS(p.check(), "min_distance_m must satisfy 0 <= R_0 < R_c",
                         std::invalid_argument);

    p = reference_cell();
    p.pathloss_exponent = 2.0;
    CHECK_THROWS_WITH_AS(p.check(), "pathloss_exponent must be > 2",
                         std::invalid_argument);

    p = reference_cell();
    p.noise_w = 0.0;
    CHECK_THROWS_WITH_AS(p.check(), "noise_w must be > 0", std::invalid_argument);

    p = reference_cell();
    p.sinr_target = -1.0;
    CHECK_THROWS_WITH_AS(p.check(), "sinr_target must be > 0", std::invalid_argument);
}

TEST_CASE("per-user power: boundary behavior") {
    CellParams p = reference_cell();
    CHECK(per_user_power(p, 0.0) == 0.0);
    CHECK(per_user_power(p, 30.0) > 0.0);
    CHECK_THROWS_AS(per_user_power(p, 50.0 + 1e-9), std::domain_error);
    CHECK_THROWS_AS(per_user_power(p, -1.0), std::domain_error);

    p.min_distance_m = 5.0;
    CHECK(per_user_power(p, 5.0) == 0.0);
    CHECK_THROWS_AS(per_user_power(p, 4.0), std::domain_error);
}

TEST_CASE("per-user power: zero-density closed form (isolated links)") {
    // With rho = 0 the profile is exactly (c/zeta)(r^eta - R_0^eta): each
    // user pays its own link budget, discounted by gamma*/(gamma*+1).
    CellParams p = reference_cell();
    p.user_density = 0.0;
    const Coefficients co = derive_coefficients(p);
    for (double r : {1.0, 10.0, 25.0, 50.0}) {
        CAPTURE(r);
        const double expected = co.c / co.zeta * std::pow(r, p.pathloss_exponent);
        CHECK(per_user_power(p, r) / expected == Approx(1.0).epsilon(1e-12));
    }

    p.min_distance_m = 5.0;
    const double expected =
        co.c / co.zeta *
        (std::pow(20.0, p.pathloss_exponent) - std::pow(5.0, p.pathloss_exponent));
    CHECK(per_user_power(p, 20.0) / expected == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("per-user power: eta -> 2 limit against the exponential closed form") {
    // At eta = 2 the profile integrates in closed form:
    //   P(r) = (b/a)(e^{a(r^2 - R_0^2)/2} - 1).
    // The admissible range is eta > 2, so probe just inside the boundary.
    CellParams p = reference_cell();
    p.pathloss_exponent = 2.0 + 1e-9;
    const Coefficients co = derive_coefficients(p);
    for (double r : {10.0, 30.0, 50.0}) {
        CAPTURE(r);
        const double closed = co.b / co.a * std::expm1(0.5 * co.a * r * r);
        CHECK(per_user_power(p, r) / closed == Approx(1.0).epsilon(1e-7));
    }
}

TEST_CASE("per-user power: strictly increasing in distance") {
    const CellParams p = reference_cell();
    double prev = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const double r = 50.0 * i / 20.0;
        const double cur = per_user_power(p, r);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("total SIC power: reference value and the 24 dBm anchor") {
    const CellParams p = reference_cell();
    const Coefficients co = derive_coefficients(p);

    // Frozen 50-digit evaluation of the (eta, beta) = (3.57, 7.75) factor.
    const double factor = bs_power_sic(p) / (co.c * std::pow(50.0, 3.57));
    CHECK(factor / 98.132904024208613645 == Approx(1.0).epsilon(1e-11));

    CHECK(watts_to_dbm(bs_power_sic(p)) == Approx(24.0).epsilon(1e-11));
}

TEST_CASE("total SIC power: equals the cumulative per-user identity") {
    // 2 pi rho int P(s) s ds telescopes to zeta P(R_c) - c R_c^eta + c R_0^eta.
    for (double r0 : {0.0, 5.0}) {
        CAPTURE(r0);
        CellParams p = reference_cell();
        p.min_distance_m = r0;
        const Coefficients co = derive_coefficients(p);
        const double eta = p.pathloss_exponent;
        const double via_profile = co.zeta * per_user_power(p, 50.0) -
                                   co.c * std::pow(50.0, eta) + co.c * std::pow(r0, eta);
        CHECK(bs_power_sic(p) / via_profile == Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("total SIC power: zero density means zero power") {
    CellParams p = reference_cell();
    p.user_density = 0.0;
    CHECK(bs_power_sic(p) == 0.0);
    CHECK(bs_power_sic_asymptotic(p) == 0.0);
    CHECK(bs_power_no_sic(p) == 0.0);
    p.min_distance_m = 5.0;
    CHECK(bs_power_sic(p) == 0.0);
}

TEST_CASE("gamma form: matches quadrature and knows its own domain") {
    const CellParams p = reference_cell();
    CHECK(bs_power_sic_gamma_form(p) / bs_power_sic(p) == Approx(1.0).epsilon(1e-11));

    CellParams off = p;
    off.min_distance_m = 1.0;
    CHECK_THROWS_AS(bs_power_sic_gamma_form(off), std::invalid_argument);

    CellParams empty = p;
    empty.user_density = 0.0;
    CHECK(bs_power_sic_gamma_form(empty) == 0.0);
}

TEST_CASE("asymptote: upper bound approached as the target grows") {
    CellParams p = reference_cell();
    const double plateau = bs_power_sic_asymptotic(p);

    double prev = 0.0;
    for (double g : {0.1, 1.0, 31.0, 1e3, 1e6}) {
        p.sinr_target = g;
        const double total = bs_power_sic(p);
        CHECK(total < plateau);
        CHECK(total > prev);
        prev = total;
    }
    p.sinr_target = 1e9;
    CHECK(bs_power_sic(p) / plateau == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("no-SIC power: closed form and the feasibility wall") {
    CellParams p = reference_cell();

    // gamma* = 31 with 8 users/cell: load 8 far beyond zeta = 32/31.
    try {
        bs_power_no_sic(p);
        FAIL("expected infeasible_error");
    } catch (const infeasible_error& e) {
        CHECK(std::string(e.what()).find("infeasible") != std::string::npos);
        CHECK(e.critical_sinr() == Approx(1.0 / 7.0).epsilon(1e-12));
        CHECK(e.critical_density() ==
              Approx((32.0 / 31.0) / (std::numbers::pi * 2500.0)).epsilon(1e-12));
    }

    // Feasible target: gamma* = 0.1 -> zeta = 11 > load = 8.
    p.sinr_target = 0.1;
    const Coefficients co = derive_coefficients(p);
    const double expected = 2.0 * std::numbers::pi * p.user_density * co.c *
                            std::pow(50.0, 5.57) / 5.57 / (11.0 - 8.0);
    CHECK(bs_power_no_sic(p) / expected == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("no-SIC power: diverges monotonically towards the wall") {
    CellParams p = reference_cell();
    p.sinr_target = 0.1;  // zeta = 11
    const double rho_crit = no_sic_critical_density(p);

    double prev = 0.0;
    for (double frac : {0.5, 0.9, 0.99, 0.999, 0.9999}) {
        p.user_density = frac * rho_crit;
        const double total = bs_power_no_sic(p);
        CHECK(total > prev);
        prev = total;
    }
    CHECK(prev > 1e3 * bs_power_no_sic([&] {
              CellParams q = p;
              q.user_density = 0.5 * rho_crit;
              return q;
          }()));

    p.user_density = rho_crit;
    CHECK_THROWS_AS(bs_power_no_sic(p), infeasible_error);
    p.user_density = rho_crit * 1.5;
    CHECK_THROWS_AS(bs_power_no_sic(p), infeasible_error);
}

TEST_CASE("no-SIC critical SINR: infinite below unit load") {
    CellParams p = reference_cell();
    p.user_density = density_from_users_per_cell(0.5, 50.0);
    CHECK(std::isinf(no_sic_critical_sinr(p)));

    p.user_density = density_from_users_per_cell(8.0, 50.0);
    CHECK(no_sic_critical_sinr(p) == Approx(1.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("mode dispatch") {
    CellParams p = reference_cell();
    p.sinr_target = 0.1;
    CHECK(total_power(p, Mode::Sic) == bs_power_sic(p));
    CHECK(total_power(p, Mode::NoSic) == bs_power_no_sic(p));
    CHECK(total_power(p, Mode::Asymptote) == bs_power_sic_asymptotic(p));
    CHECK(to_string(Mode::Sic) == "sic");
    CHECK(to_string(Mode::NoSic) == "nosic");
    CHECK(to_string(Mode::Asymptote) == "asymptote");
}

TEST_CASE("unit helpers: dBm, spectral efficiency, throughput") {
    CHECK(watts_to_dbm(1.0) == Approx(30.0).epsilon(1e-14));
    CHECK(dbm_to_watts(30.0) == Approx(1.0).epsilon(1e-14));
    CHECK(dbm_to_watts(watts_to_dbm(0.25118864315095801)) ==
          Approx(0.25118864315095801).epsilon(1e-13));
    CHECK_THROWS_AS(watts_to_dbm(0.0), std::domain_error);

    CHECK(sinr_for_se(5.0) == 31.0);
    CHECK(spectral_efficiency(31.0) == 5.0);
    CHECK(spectral_efficiency(0.0) == 0.0);
    CHECK_THROWS_AS(sinr_for_se(-1.0), std::domain_error);

    CHECK(throughput(31.0, 2.0e6) == Approx(1.0e7).epsilon(1e-14));
    const LinkQoS q = link_qos(31.0, 1e6);
    CHECK(q.se == 5.0);
    CHECK(q.throughput == Approx(5e6).epsilon(1e-14));
}

TEST_CASE("density helper: users per cell to users per square meter") {
    const double rho = density_from_users_per_cell(8.0, 50.0);
    CHECK(rho * std::numbers::pi * 2500.0 == Approx(8.0).epsilon(1e-14));

    const double rho_ann = density_from_users_per_cell(8.0, 50.0, 30.0);
    CHECK(rho_ann * std::numbers::pi * (2500.0 - 900.0) == Approx(8.0).epsilon(1e-14));

    CHECK_THROWS_AS(density_from_users_per_cell(-1.0, 50.0), std::domain_error);
    CHECK_THROWS_AS(density_from_users_per_cell(8.0, 50.0, 50.0), std::domain_error);
}
