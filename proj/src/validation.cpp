#include "nomacell/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nomacell/discrete_oracle.hpp"
#include "nomacell/numerics.hpp"
#include "nomacell/planner.hpp"

namespace nomacell {

namespace {
constexpr double kPi = std::numbers::pi;

double rel_gap(double value, double reference) {
    const double scale = std::max(std::abs(reference), std::numeric_limits<double>::min());
    return std::abs(value - reference) / scale;
}
}  // namespace

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

double max_ode_residual(const std::function<double(double)>& power_fn,
                        const CellParams& p, int n_grid) {
    const Coefficients co = derive_coefficients(p);
    const double h = 1e-5 * p.cell_radius_m;
    const double lo = p.min_distance_m;
    const double hi = p.cell_radius_m - h;  // keep r+h inside the domain

    double worst = 0.0;
    for (int i = 1; i <= n_grid; ++i) {
        const double r = lo + (hi - lo) * static_cast<double>(i) / n_grid;
        const double dp = (power_fn(r + h) - power_fn(r - h)) / (2.0 * h);
        const double rhs = 2.0 * kPi * p.user_density * r * power_fn(r) +
                           co.c * p.pathloss_exponent *
                               std::pow(r, p.pathloss_exponent - 1.0);
        worst = std::max(worst, std::abs(co.zeta * dp - rhs) / (co.zeta * std::abs(dp)));
    }
    return worst;
}

double max_integral_identity_error(const CellParams& p) {
    const Coefficients co = derive_coefficients(p);
    const Tolerance tol{1e-11, 1e-300, 200};

    double worst = 0.0;
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
        const double r = frac * p.cell_radius_m;
        if (!(r > p.min_distance_m)) continue;
        const double lhs = 2.0 * kPi * p.user_density *
                           integrate([&](double s) { return per_user_power(p, s) * s; },
                                     p.min_distance_m, r, tol);
        const double rhs = co.zeta * per_user_power(p, r) -
                           co.c * std::pow(r, p.pathloss_exponent) +
                           co.c * std::pow(p.min_distance_m, p.pathloss_exponent);
        worst = std::max(worst, rel_gap(lhs, rhs));
    }
    return worst;
}

namespace {

CellParams grid_params(double eta, double beta) {
    CellParams p;
    p.cell_radius_m = 50.0;
    p.min_distance_m = 0.0;
    p.pathloss_exponent = eta;
    p.pathloss_constant = 1e-4;
    p.noise_w = 1e-13;
    p.sinr_target = 1.0;  // zeta = 2
    p.user_density = beta * 2.0 / (kPi * p.cell_radius_m * p.cell_radius_m);
    return p;
}

}  // namespace

double max_gamma_form_gap() {
    double worst = 0.0;
    for (double eta : {2.0 + 1e-12, 3.0, 3.57, 4.0}) {
        for (double beta : {0.1, 1.0, 7.75, 20.0}) {
            const CellParams p = grid_params(eta, beta);
            worst = std::max(worst, rel_gap(bs_power_sic_gamma_form(p), bs_power_sic(p)));
        }
    }
    return worst;
}

double gamma_form_uncorrected_factor(double eta, double beta) {
    const double s = 0.5 * (eta + 2.0);
    return 2.0 * beta * std::exp(beta) *
           (upper_incomplete_gamma(s, beta) - std::tgamma(s));
}

double gamma_form_corrected_factor(double eta, double beta) {
    const double s = 0.5 * (eta + 2.0);
    return std::exp(beta) * std::pow(beta, -0.5 * eta) * lower_incomplete_gamma(s, beta);
}

double no_sic_ring_gap(std::size_t n, double eta, double cell_radius_m) {
    const double gamma_star = 0.5 / (static_cast<double>(n) - 1.0);
    const double pathloss_constant = 2.66e-4;
    const double noise_w = 1e-13;

    const UserSet users = place_users_rings(n, 0.0, cell_radius_m);
    const AllocationResult alloc =
        solve_no_sic_allocation(users, gamma_star, pathloss_constant, noise_w, eta);

    CellParams p;
    p.cell_radius_m = cell_radius_m;
    p.pathloss_exponent = eta;
    p.pathloss_constant = pathloss_constant;
    p.noise_w = noise_w;
    p.user_density = density_from_users_per_cell(static_cast<double>(n), cell_radius_m);
    p.sinr_target = gamma_star;
    return rel_gap(alloc.total_power, bs_power_no_sic(p));
}

double sic_ring_gap(double gamma_star, std::size_t n, double eta, double cell_radius_m) {
    const double pathloss_constant = 2.66e-4;
    const double noise_w = 1e-13;

    const UserSet users = place_users_rings(n, 0.0, cell_radius_m);
    const AllocationResult alloc =
        solve_sic_allocation(users, gamma_star, pathloss_constant, noise_w, eta);

    CellParams p;
    p.cell_radius_m = cell_radius_m;
    p.pathloss_exponent = eta;
    p.pathloss_constant = pathloss_constant;
    p.noise_w = noise_w;
    p.user_density = density_from_users_per_cell(static_cast<double>(n), cell_radius_m);
    p.sinr_target = gamma_star;
    return rel_gap(alloc.total_power, bs_power_sic(p));
}

namespace {

CellParams anchor_params(double users_per_cell, double cell_radius_m, double se,
                         double noise_w) {
    CellParams p;
    p.cell_radius_m = cell_radius_m;
    p.min_distance_m = 0.0;
    p.pathloss_exponent = kAnchorPathlossExponent;
    p.pathloss_constant = kAnchorPathlossConstant;
    p.noise_w = noise_w;
    p.user_density = density_from_users_per_cell(users_per_cell, cell_radius_m);
    p.sinr_target = sinr_for_se(se);
    return p;
}

}  // namespace

AnchorCheck run_anchor_check() {
    AnchorCheck out;
    const PlanAnswer cal = calibrate_noise(5.0, 8.0, 50.0, 24.0,
                                           kAnchorPathlossConstant,
                                           kAnchorPathlossExponent);
    out.noise_w = cal.value;

    const double forward_a =
        watts_to_dbm(bs_power_sic(anchor_params(8.0, 50.0, 5.0, out.noise_w)));
    out.roundtrip_error_db = forward_a - 24.0;

    out.residual_db_50m =
        watts_to_dbm(bs_power_sic(anchor_params(10.0, 50.0, 15.0, out.noise_w))) - 41.0;
    out.residual_db_100m =
        watts_to_dbm(bs_power_sic(anchor_params(10.0, 100.0, 15.0, out.noise_w))) - 41.0;
    return out;
}

double max_plateau_rise_db() {
    const double noise_w = run_anchor_check().noise_w;
    double worst = 0.0;
    for (double users : {8.0, 10.0, 12.0}) {
        for (double radius : {50.0, 100.0}) {
            const double p5 = bs_power_sic(anchor_params(users, radius, 5.0, noise_w));
            const double p15 = bs_power_sic(anchor_params(users, radius, 15.0, noise_w));
            worst = std::max(worst, 10.0 * std::log10(p15 / p5));
        }
    }
    return worst;
}

bool curves_ordered_by_density_and_radius() {
    const double noise_w = run_anchor_check().noise_w;
    for (int se = 1; se <= 15; ++se) {
        double prev = 0.0;
        for (double users : {8.0, 10.0, 12.0}) {
            const double p50 = bs_power_sic(anchor_params(users, 50.0, se, noise_w));
            const double p100 = bs_power_sic(anchor_params(users, 100.0, se, noise_w));
            if (!(p100 > p50)) return false;
            if (!(p50 > prev)) return false;
            prev = p50;
        }
    }
    return true;
}

ValidationReport run_validation(const CellParams& p) {
    ValidationReport report;

    {
        CheckResult c;
        c.name = "ode-residual";
        c.threshold = 1e-4;
        c.measured =
            max_ode_residual([&](double r) { return per_user_power(p, r); }, p, 50);
        c.pass = c.measured < c.threshold;
        report.checks.push_back(c);
    }
    {
        CheckResult c;
        c.name = "integral-identity";
        c.threshold = 1e-8;
        c.measured = max_integral_identity_error(p);
        c.pass = c.measured < c.threshold;
        if (p.min_distance_m > 0.0)
            c.note = "identity includes the (N_th/K) R_0^eta constant fixed by P(R_0)=0";
        report.checks.push_back(c);
    }
    {
        CheckResult c;
        c.name = "gamma-form-equivalence";
        c.threshold = 1e-8;
        c.measured = max_gamma_form_gap();
        c.pass = c.measured < c.threshold;
        report.checks.push_back(c);

        std::ostringstream os;
        os << "gamma-form note: the uncorrected factor 2*beta*e^beta*(Gamma(s,beta)-Gamma(s)) "
              "at eta=3.57, beta=7.75 evaluates to "
           << gamma_form_uncorrected_factor(3.57, 7.75)
           << " (negative); the corrected identity e^beta*beta^(-eta/2)*gamma(s,beta) gives "
           << gamma_form_corrected_factor(3.57, 7.75)
           << ", matching quadrature. Both are factors of (N_th/K)*R_c^eta.";
        report.notes.push_back(os.str());
    }
    {
        CheckResult c;
        c.name = "no-sic-ring-convergence-n100";
        c.threshold = 0.02;
        c.measured = no_sic_ring_gap(100);
        c.pass = c.measured < c.threshold;
        report.checks.push_back(c);
    }
    {
        CheckResult c;
        c.name = "no-sic-ring-convergence-n1000";
        c.threshold = 0.002;
        c.measured = no_sic_ring_gap(1000);
        c.pass = c.measured < c.threshold;
        report.checks.push_back(c);
    }

    const AnchorCheck anchors = run_anchor_check();
    {
        CheckResult c;
        c.name = "anchor-24dbm-roundtrip";
        c.threshold = 0.01;
        c.measured = std::abs(anchors.roundtrip_error_db);
        c.pass = c.measured < c.threshold;
        std::ostringstream os;
        os << "calibrated N_th = " << anchors.noise_w << " W ("
           << watts_to_dbm(anchors.noise_w) << " dBm)";
        c.note = os.str();
        report.checks.push_back(c);
    }
    {
        CheckResult c;
        c.name = "anchor-41dbm-crosscheck";
        c.threshold = 1.5;
        c.measured = std::abs(anchors.residual_db_50m);
        c.pass = true;  // informational: the anchor's radius is not pinned
        std::ostringstream os;
        os << "residual " << anchors.residual_db_50m
           << " dB under the assumed 50 m radius; the 41 dBm point does not pin its "
              "radius, and under the 100 m hypothesis the residual is "
           << anchors.residual_db_100m << " dB";
        c.note = os.str();
        report.checks.push_back(c);
    }
    {
        CheckResult c;
        c.name = "plateau-rise-se5-to-se15";
        c.threshold = 3.0;
        c.measured = max_plateau_rise_db();
        c.pass = c.measured < c.threshold;
        report.checks.push_back(c);
    }
    {
        CheckResult c;
        c.name = "curve-ordering-density-radius";
        c.threshold = 1.0;
        c.measured = curves_ordered_by_density_and_radius() ? 1.0 : 0.0;
        c.pass = c.measured == 1.0;
        report.checks.push_back(c);
    }
    return report;
}

}  // namespace nomacell
