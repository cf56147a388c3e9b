#include "nomacell/planner.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace nomacell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Tolerance kRootTol{1e-12, 0.0, 200};

double forward_or_inf(const CellParams& p, Mode mode) {
    try {
        return total_power(p, mode);
    } catch (const infeasible_error&) {
        return kInf;
    }
}

// Grows hi geometrically until f(hi) >= 0 (f monotone nondecreasing).
// Returns the final hi; throws if the cap is reached first.
double expand_upward(const std::function<double(double)>& f, double hi, double cap,
                     const char* what) {
    while (f(hi) < 0.0) {
        hi *= 4.0;
        if (hi > cap) {
            std::ostringstream os;
            os << what << ": budget not reachable below search cap " << cap;
            throw no_coverage_error(os.str());
        }
    }
    return hi;
}

PlanAnswer solve_monotone(PlanQuantity quantity, const std::function<double(double)>& f,
                          double lo, double hi) {
    const double x = find_root(f, lo, hi, kRootTol);
    PlanAnswer ans;
    ans.quantity = quantity;
    ans.value = x;
    ans.bracket_lo = lo;
    ans.bracket_hi = hi;
    ans.residual = std::abs(f(x));
    return ans;
}

}  // namespace

PlanAnswer max_coverage_radius(const CellParams& p, double budget_w, Mode mode,
                               DensityConvention convention, double users_per_cell) {
    if (!(budget_w > 0.0)) throw std::invalid_argument("coverage: budget must be > 0");
    if (mode == Mode::NoSic && convention == DensityConvention::UsersPerCell &&
        p.min_distance_m == 0.0) {
        // Load pi*rho*R^2 = n regardless of radius: feasibility does not
        // depend on R at all, so an over-dense cell has no feasible radius.
        const double zeta = (p.sinr_target + 1.0) / p.sinr_target;
        if (users_per_cell >= zeta) {
            std::ostringstream os;
            os << "coverage (no-SIC): " << users_per_cell
               << " users/cell infeasible at every radius (zeta = " << zeta << ")";
            throw no_coverage_error(os.str());
        }
    }

    auto power_at = [&](double radius) {
        CellParams q = p;
        q.cell_radius_m = radius;
        if (convention == DensityConvention::UsersPerCell)
            q.user_density =
                density_from_users_per_cell(users_per_cell, radius, q.min_distance_m);
        return forward_or_inf(q, mode);
    };
    auto f = [&](double radius) { return power_at(radius) - budget_w; };

    double lo = p.min_distance_m > 0.0 ? p.min_distance_m * (1.0 + 1e-9) : 1e-3;
    double hi = std::max(2.0 * lo, 1.0);

    if (mode == Mode::NoSic && convention == DensityConvention::FixedDensity &&
        p.user_density > 0.0) {
        // Shrink the bracket to the feasible radii: pi*rho*(R^2-R_0^2) < zeta.
        const double zeta = (p.sinr_target + 1.0) / p.sinr_target;
        const double wall = std::sqrt(zeta / (std::numbers::pi * p.user_density) +
                                      p.min_distance_m * p.min_distance_m);
        if (wall <= lo)
            throw no_coverage_error("coverage (no-SIC): feasible radius region is empty");
        hi = wall * (1.0 - 1e-12);
        if (f(hi) < 0.0) {
            // Power diverges at the wall, so running out of budget headroom
            // this close to it means the budget buys the whole region.
            PlanAnswer ans;
            ans.quantity = PlanQuantity::CoverageRadiusM;
            ans.value = hi;
            ans.bracket_lo = lo;
            ans.bracket_hi = hi;
            ans.residual = std::abs(f(hi));
            return ans;
        }
    } else {
        hi = expand_upward(f, hi, 1e9, "coverage");
    }

    if (f(lo) > 0.0) {
        std::ostringstream os;
        os << "coverage: budget " << budget_w << " W below the total power "
           << power_at(lo) << " W at the minimal radius " << lo << " m";
        throw no_coverage_error(os.str());
    }
    return solve_monotone(PlanQuantity::CoverageRadiusM, f, lo, hi);
}

PlanAnswer max_spectral_efficiency(const CellParams& p, double budget_w, Mode mode) {
    if (!(budget_w > 0.0)) throw std::invalid_argument("qos: budget must be > 0");
    if (mode == Mode::Asymptote)
        throw std::invalid_argument("qos: asymptote mode has no SINR dependence");

    auto power_at = [&](double gamma) {
        CellParams q = p;
        q.sinr_target = gamma;
        return forward_or_inf(q, mode);
    };
    auto f = [&](double gamma) { return power_at(gamma) - budget_w; };

    PlanAnswer ans;
    ans.quantity = PlanQuantity::MaxSpectralEfficiency;

    // The power saturates as gamma* -> inf: at the asymptote under SIC, and
    // below the density wall without SIC. A budget at or above the plateau
    // is a first-class unbounded-SE answer, not an error.
    double plateau = kInf;
    double gamma_cap = 1e18;
    if (mode == Mode::Sic) {
        plateau = bs_power_sic_asymptotic(p);
    } else {
        const double gamma_wall = no_sic_critical_sinr(p);
        if (std::isinf(gamma_wall)) {
            CellParams q = p;
            q.sinr_target = 1.0;  // zeta -> 1 limit of the no-SIC closed form
            const Coefficients co = derive_coefficients(q);
            const double ratio = p.min_distance_m / p.cell_radius_m;
            const double load = co.beta2 * (1.0 - ratio * ratio);
            const double numer = 2.0 * std::numbers::pi * p.user_density * co.c *
                                 std::pow(p.cell_radius_m, p.pathloss_exponent + 2.0) *
                                 (1.0 - std::pow(ratio, p.pathloss_exponent + 2.0)) /
                                 (p.pathloss_exponent + 2.0);
            plateau = numer / (1.0 - load);
        } else {
            gamma_cap = gamma_wall * (1.0 - 1e-12);
        }
    }
    if (budget_w >= plateau) {
        ans.unbounded = true;
        ans.value = kInf;
        ans.residual = budget_w - plateau;
        return ans;
    }

    const double gamma_lo = 1e-12;
    if (f(gamma_lo) >= 0.0) {  // budget below even the gamma*->0 power
        ans.value = 0.0;
        ans.residual = std::abs(f(gamma_lo));
        return ans;
    }
    double gamma_hi = std::min(1.0, gamma_cap);
    while (f(gamma_hi) < 0.0 && gamma_hi < gamma_cap)
        gamma_hi = std::min(gamma_hi * 8.0, gamma_cap);
    if (f(gamma_hi) < 0.0) {
        // Budget sits between the cap and the plateau; report the cap.
        ans.value = spectral_efficiency(gamma_hi);
        ans.bracket_lo = gamma_lo;
        ans.bracket_hi = gamma_hi;
        ans.residual = std::abs(f(gamma_hi));
        return ans;
    }

    PlanAnswer root = solve_monotone(PlanQuantity::MaxSpectralEfficiency, f, gamma_lo, gamma_hi);
    root.value = spectral_efficiency(root.value);
    return root;
}

PlanAnswer max_density(const CellParams& p, double budget_w, Mode mode) {
    if (!(budget_w > 0.0)) throw std::invalid_argument("density: budget must be > 0");

    auto f = [&](double rho) {
        CellParams q = p;
        q.user_density = rho;
        return forward_or_inf(q, mode) - budget_w;
    };

    const double lo = 0.0;  // rho = 0 gives zero power, below any positive budget
    double hi;
    if (mode == Mode::NoSic) {
        hi = no_sic_critical_density(p) * (1.0 - 1e-12);
        if (f(hi) < 0.0) {
            PlanAnswer ans;
            ans.quantity = PlanQuantity::MaxDensity;
            ans.value = hi;
            ans.bracket_lo = lo;
            ans.bracket_hi = hi;
            ans.residual = std::abs(f(hi));
            return ans;
        }
    } else {
        hi = expand_upward(f, 1.0 / (p.cell_radius_m * p.cell_radius_m), 1e12, "density");
    }
    return solve_monotone(PlanQuantity::MaxDensity, f, lo, hi);
}

namespace {

PowerCurvePoint sweep_point(const CellParams& p, double se, Mode mode) {
    CellParams q = p;
    q.sinr_target = sinr_for_se(se);
    PowerCurvePoint pt;
    pt.se = se;
    try {
        pt.power_w = total_power(q, mode);
        pt.power_dbm = pt.power_w > 0.0 ? watts_to_dbm(pt.power_w) : -kInf;
    } catch (const infeasible_error&) {
        pt.feasible = false;  // marked, not dropped
        pt.power_w = kInf;
        pt.power_dbm = kInf;
    }
    return pt;
}

void check_se_grid(const std::vector<double>& se_grid) {
    if (se_grid.empty()) throw std::invalid_argument("sweep: empty SE grid");
    for (std::size_t i = 0; i < se_grid.size(); ++i) {
        if (!(se_grid[i] > 0.0))
            throw std::invalid_argument("sweep: SE grid must be positive");
        if (i > 0 && !(se_grid[i] > se_grid[i - 1]))
            throw std::invalid_argument("sweep: SE grid must be strictly increasing");
    }
}

}  // namespace

PowerCurve sweep_power_vs_se(const CellParams& p, const std::vector<double>& se_grid,
                             Mode mode) {
    check_se_grid(se_grid);
    p.check();
    PowerCurve curve;
    curve.params = p;
    curve.mode = mode;
    curve.points.resize(se_grid.size());
    const auto n = static_cast<std::int64_t>(se_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i)
        curve.points[static_cast<std::size_t>(i)] =
            sweep_point(p, se_grid[static_cast<std::size_t>(i)], mode);
    return curve;
}

PowerCurve sweep_power_vs_se_serial(const CellParams& p,
                                    const std::vector<double>& se_grid, Mode mode) {
    check_se_grid(se_grid);
    p.check();
    PowerCurve curve;
    curve.params = p;
    curve.mode = mode;
    curve.points.resize(se_grid.size());
    for (std::size_t i = 0; i < se_grid.size(); ++i)
        curve.points[i] = sweep_point(p, se_grid[i], mode);
    return curve;
}

PlanAnswer calibrate_noise(double se, double users_per_cell, double cell_radius_m,
                           double power_dbm, double pathloss_constant, double eta) {
    if (!(se > 0.0)) throw std::invalid_argument("calibrate: SE anchor must be > 0");
    if (!(users_per_cell > 0.0))
        throw std::invalid_argument("calibrate: users per cell must be > 0");

    CellParams p;
    p.cell_radius_m = cell_radius_m;
    p.min_distance_m = 0.0;
    p.pathloss_exponent = eta;
    p.pathloss_constant = pathloss_constant;
    p.noise_w = 1.0;  // unit noise; total power is proportional to N_th
    p.user_density = density_from_users_per_cell(users_per_cell, cell_radius_m);
    p.sinr_target = sinr_for_se(se);

    const double budget_w = dbm_to_watts(power_dbm);
    const double unit_power = bs_power_sic(p);

    PlanAnswer ans;
    ans.quantity = PlanQuantity::NoiseWatts;
    ans.value = budget_w / unit_power;
    p.noise_w = ans.value;
    ans.residual = std::abs(bs_power_sic(p) - budget_w);
    return ans;
}

}  // namespace nomacell
