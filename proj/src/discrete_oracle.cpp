#include "nomacell/discrete_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nomacell {

namespace {

void check_geometry(double min_distance_m, double cell_radius_m) {
    if (!(min_distance_m >= 0.0) || !(min_distance_m < cell_radius_m))
        throw std::invalid_argument("user placement: requires 0 <= R_0 < R_c");
}

void check_link(double pathloss_constant, double noise_w, double eta) {
    if (!(pathloss_constant > 0.0)) throw std::invalid_argument("pathloss_constant must be > 0");
    if (!(noise_w > 0.0)) throw std::invalid_argument("noise_w must be > 0");
    if (!(eta > 2.0)) throw std::invalid_argument("pathloss exponent must be > 2");
}

void sort_stable(UserSet& users) {
    std::vector<std::size_t> order(users.distances.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return users.distances[i] < users.distances[j];
    });
    std::vector<double> d(users.distances.size());
    std::vector<std::size_t> t(users.distances.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        d[k] = users.distances[order[k]];
        t[k] = users.tie_order.empty() ? order[k] : users.tie_order[order[k]];
    }
    users.distances = std::move(d);
    users.tie_order = std::move(t);
}

// Fully specified uniform double in [0, 1): 53 high bits of the engine
// output. uniform_real_distribution is implementation-defined, which would
// break byte-identical replay across standard libraries.
double canonical_u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

UserSet make_user_set(const std::vector<double>& distances, double min_distance_m,
                      double cell_radius_m) {
    check_geometry(min_distance_m, cell_radius_m);
    if (distances.empty()) throw std::invalid_argument("user set must not be empty");
    for (double r : distances) {
        if (!(r >= min_distance_m) || !(r <= cell_radius_m)) {
            std::ostringstream os;
            os << "user distance " << r << " outside [" << min_distance_m << ", "
               << cell_radius_m << "]";
            throw std::invalid_argument(os.str());
        }
    }
    UserSet users;
    users.distances = distances;
    users.cell_radius_m = cell_radius_m;
    users.min_distance_m = min_distance_m;
    sort_stable(users);
    return users;
}

UserSet place_users_uniform(std::size_t n, double min_distance_m, double cell_radius_m,
                            std::uint64_t seed) {
    check_geometry(min_distance_m, cell_radius_m);
    if (n == 0) throw std::invalid_argument("place_users_uniform: n must be >= 1");

    std::mt19937_64 rng(seed);
    const double r0sq = min_distance_m * min_distance_m;
    const double span = cell_radius_m * cell_radius_m - r0sq;
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = std::sqrt(r0sq + canonical_u01(rng) * span);

    UserSet users = make_user_set(d, min_distance_m, cell_radius_m);
    users.seed = seed;
    users.seeded = true;
    return users;
}

UserSet place_users_rings(std::size_t n, double min_distance_m, double cell_radius_m) {
    check_geometry(min_distance_m, cell_radius_m);
    if (n == 0) throw std::invalid_argument("place_users_rings: n must be >= 1");

    const double r0sq = min_distance_m * min_distance_m;
    const double span = cell_radius_m * cell_radius_m - r0sq;
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k)
        d[k] = std::sqrt(r0sq + (static_cast<double>(k) + 0.5) * span / static_cast<double>(n));

    return make_user_set(d, min_distance_m, cell_radius_m);
}

AllocationResult solve_sic_allocation(const UserSet& users, double gamma_star,
                                      double pathloss_constant, double noise_w,
                                      double eta) {
    if (users.size() == 0) throw std::invalid_argument("solve_sic_allocation: empty user set");
    if (!(gamma_star > 0.0)) throw std::invalid_argument("gamma_star must be > 0");
    check_link(pathloss_constant, noise_w, eta);

    const double c = noise_w / pathloss_constant;
    AllocationResult out;
    out.mode = Mode::Sic;
    out.powers.resize(users.size());
    out.achieved_sinr.assign(users.size(), gamma_star);

    double running_sum = 0.0;
    for (std::size_t k = 0; k < users.size(); ++k) {
        const double p = gamma_star * (running_sum + c * std::pow(users.distances[k], eta));
        out.powers[k] = p;
        running_sum += p;
    }
    out.total_power = running_sum;
    return out;
}

AllocationResult solve_no_sic_allocation(const UserSet& users, double gamma_star,
                                         double pathloss_constant, double noise_w,
                                         double eta) {
    if (users.size() == 0) throw std::invalid_argument("solve_no_sic_allocation: empty user set");
    if (!(gamma_star > 0.0)) throw std::invalid_argument("gamma_star must be > 0");
    check_link(pathloss_constant, noise_w, eta);

    const double zeta = (gamma_star + 1.0) / gamma_star;
    const double n = static_cast<double>(users.size());

    AllocationResult out;
    out.mode = Mode::NoSic;
    if (n >= zeta) {
        out.feasible = false;
        out.total_power = std::numeric_limits<double>::infinity();
        return out;
    }

    const double c = noise_w / pathloss_constant;
    double pathloss_sum = 0.0;
    for (double r : users.distances) pathloss_sum += std::pow(r, eta);

    out.total_power = c * pathloss_sum / (zeta - n);
    out.powers.resize(users.size());
    out.achieved_sinr.assign(users.size(), gamma_star);
    for (std::size_t u = 0; u < users.size(); ++u)
        out.powers[u] = (out.total_power + c * std::pow(users.distances[u], eta)) / zeta;
    return out;
}

namespace {

// Direct O(N^2) recomputation of one user's SINR from first principles;
// the inner loop runs in a fixed order so the parallel and serial drivers
// produce bitwise-identical values.
double recompute_sinr(const UserSet& users, const AllocationResult& alloc, double c,
                      double eta, std::size_t u) {
    const double ru = users.distances[u];
    double interference = 0.0;
    for (std::size_t v = 0; v < users.size(); ++v) {
        if (v == u) continue;
        if (alloc.mode == Mode::Sic) {
            const bool nearer = users.distances[v] < ru ||
                                (users.distances[v] == ru &&
                                 users.tie_order[v] < users.tie_order[u]);
            if (!nearer) continue;  // SIC decodes and removes farther users
        }
        interference += alloc.powers[v];
    }
    return alloc.powers[u] / (interference + c * std::pow(ru, eta));
}

}  // namespace

std::vector<double> verify_sinr_serial(const UserSet& users,
                                       const AllocationResult& alloc,
                                       double pathloss_constant, double noise_w,
                                       double eta) {
    if (alloc.mode != Mode::Sic && alloc.mode != Mode::NoSic)
        throw std::invalid_argument("verify_sinr: allocation mode mismatch");
    if (!alloc.feasible)
        throw std::invalid_argument("verify_sinr: allocation is infeasible");
    if (alloc.powers.size() != users.size())
        throw std::invalid_argument("verify_sinr: allocation does not match user set");
    check_link(pathloss_constant, noise_w, eta);

    const double c = noise_w / pathloss_constant;
    std::vector<double> sinr(users.size());
    for (std::size_t u = 0; u < users.size(); ++u)
        sinr[u] = recompute_sinr(users, alloc, c, eta, u);
    return sinr;
}

std::vector<double> verify_sinr(const UserSet& users, const AllocationResult& alloc,
                                double pathloss_constant, double noise_w, double eta) {
    if (alloc.mode != Mode::Sic && alloc.mode != Mode::NoSic)
        throw std::invalid_argument("verify_sinr: allocation mode mismatch");
    if (!alloc.feasible)
        throw std::invalid_argument("verify_sinr: allocation is infeasible");
    if (alloc.powers.size() != users.size())
        throw std::invalid_argument("verify_sinr: allocation does not match user set");
    check_link(pathloss_constant, noise_w, eta);

    const double c = noise_w / pathloss_constant;
    const auto n = static_cast<std::int64_t>(users.size());
    std::vector<double> sinr(users.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t u = 0; u < n; ++u)
        sinr[static_cast<std::size_t>(u)] =
            recompute_sinr(users, alloc, c, eta, static_cast<std::size_t>(u));
    return sinr;
}

}  // namespace nomacell
