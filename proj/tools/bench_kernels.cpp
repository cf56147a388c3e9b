// Benchmark of the two parallel kernels against their serial references:
//   - verify_sinr: O(n^2) SINR recomputation over a discrete allocation
//   - sweep_power_vs_se: independent quadrature per SE grid point
// Each pair must agree bitwise; the benchmark asserts that before timing.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nomacell/discrete_oracle.hpp"
#include "nomacell/planner.hpp"

using namespace nomacell;

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f, int reps) {
    const auto t0 = clock_type::now();
    for (int i = 0; i < reps; ++i) f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

CellParams bench_params() {
    CellParams p;
    p.cell_radius_m = 50.0;
    p.pathloss_exponent = 3.57;
    p.pathloss_constant = 2.66e-4;
    p.noise_w = 5.8579285488622767e-13;
    p.user_density = density_from_users_per_cell(8.0, 50.0);
    p.sinr_target = 31.0;
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n_users = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000;
    const std::size_t grid_n = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 256;

#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif

    const CellParams p = bench_params();

    // Kernel 1: SINR verification over a large random instance. A soft
    // target keeps the compounded SIC power finite at any n; the kernel
    // cost is independent of the power magnitudes.
    const double gamma_bench = 2.0 / static_cast<double>(n_users);
    const UserSet users = place_users_uniform(n_users, 0.0, p.cell_radius_m, 42);
    const AllocationResult alloc = solve_sic_allocation(
        users, gamma_bench, p.pathloss_constant, p.noise_w, p.pathloss_exponent);

    const std::vector<double> ref = verify_sinr_serial(
        users, alloc, p.pathloss_constant, p.noise_w, p.pathloss_exponent);
    const std::vector<double> par = verify_sinr(
        users, alloc, p.pathloss_constant, p.noise_w, p.pathloss_exponent);
    if (ref != par) {
        std::fprintf(stderr, "verify_sinr: parallel != serial\n");
        return 1;
    }
    const double t_vs = time_ms(
        [&] {
            verify_sinr_serial(users, alloc, p.pathloss_constant, p.noise_w,
                               p.pathloss_exponent);
        },
        3);
    const double t_vp = time_ms(
        [&] {
            verify_sinr(users, alloc, p.pathloss_constant, p.noise_w,
                        p.pathloss_exponent);
        },
        3);
    std::printf("verify_sinr      n=%zu    serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n",
                n_users, t_vs, t_vp, t_vs / t_vp);

    // Kernel 2: SE sweep, one adaptive quadrature per grid point.
    std::vector<double> grid(grid_n);
    for (std::size_t i = 0; i < grid_n; ++i)
        grid[i] = 1.0 + 14.0 * static_cast<double>(i) / static_cast<double>(grid_n - 1);

    const PowerCurve curve_s = sweep_power_vs_se_serial(p, grid, Mode::Sic);
    const PowerCurve curve_p = sweep_power_vs_se(p, grid, Mode::Sic);
    for (std::size_t i = 0; i < grid_n; ++i) {
        if (curve_s.points[i].power_w != curve_p.points[i].power_w) {
            std::fprintf(stderr, "sweep: parallel != serial at grid point %zu\n", i);
            return 1;
        }
    }
    const double t_ss = time_ms([&] { sweep_power_vs_se_serial(p, grid, Mode::Sic); }, 5);
    const double t_sp = time_ms([&] { sweep_power_vs_se(p, grid, Mode::Sic); }, 5);
    std::printf("sweep_power_vs_se n=%zu   serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n",
                grid_n, t_ss, t_sp, t_ss / t_sp);
    return 0;
}
