#pragma once

#include <vector>

#include "nomacell/cell_model.hpp"

namespace nomacell {

/// How a coverage search treats density while the candidate radius moves:
/// a fixed absolute rho, or a fixed number of users per cell (rho rescales
/// with the candidate radius, the convention of the power-vs-SE figures).
enum class DensityConvention { UsersPerCell, FixedDensity };

struct PowerCurvePoint {
    double se = 0.0;        // bits/s/Hz
    double power_w = 0.0;
    double power_dbm = 0.0; // -inf when power is 0, +inf when infeasible
    bool feasible = true;   // false only for no-SIC points past the wall
};

/// Sampled (spectral efficiency, total power) pairs for one mode.
struct PowerCurve {
    std::vector<PowerCurvePoint> points;
    CellParams params;  // sinr_target varies along the curve
    Mode mode = Mode::Sic;
};

enum class PlanQuantity { CoverageRadiusM, MaxSpectralEfficiency, MaxDensity, NoiseWatts };

/// Answer of one model inversion. Forward-evaluating the model at `value`
/// reproduces the budget within `residual`. `unbounded` marks the
/// first-class "budget exceeds the asymptote" answer for QoS planning.
struct PlanAnswer {
    PlanQuantity quantity;
    double value = 0.0;
    bool unbounded = false;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;
};

/// Thrown when a budget cannot be met anywhere in the search region
/// (budget below the power at the minimal radius, or an empty no-SIC
/// feasible region).
class no_coverage_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Largest cell radius whose total power stays within the budget.
/// p.cell_radius_m is ignored. With DensityConvention::UsersPerCell the
/// density is users_per_cell/(pi(R^2-R_0^2)) at each candidate radius;
/// with FixedDensity p.user_density is used as-is.
PlanAnswer max_coverage_radius(const CellParams& p, double budget_w, Mode mode,
                               DensityConvention convention, double users_per_cell);

/// Largest spectral efficiency reachable within the budget. SIC power
/// saturates at the asymptote, so a budget at or above it yields an
/// unbounded answer; without SIC the same happens below the density wall.
PlanAnswer max_spectral_efficiency(const CellParams& p, double budget_w, Mode mode);

/// Largest user density servable within the budget.
PlanAnswer max_density(const CellParams& p, double budget_w, Mode mode);

/// Total power across a strictly increasing SE grid for one mode.
/// Grid points are independent; evaluation is OpenMP-parallel with
/// results assembled in grid order.
PowerCurve sweep_power_vs_se(const CellParams& p, const std::vector<double>& se_grid,
                             Mode mode);

/// Serial reference for sweep_power_vs_se, kept for tests and the benchmark.
PowerCurve sweep_power_vs_se_serial(const CellParams& p,
                                    const std::vector<double>& se_grid, Mode mode);

/// Solves N_th from one (SE, users-per-cell, radius, power) anchor point.
/// Total SIC power is exactly proportional to N_th, so this is a single
/// division, no iteration.
PlanAnswer calibrate_noise(double se, double users_per_cell, double cell_radius_m,
                           double power_dbm, double pathloss_constant, double eta);

}  // namespace nomacell
