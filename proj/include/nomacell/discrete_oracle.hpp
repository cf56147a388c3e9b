#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nomacell/cell_model.hpp"

namespace nomacell {

/// Ordered set of user distances. Kept sorted ascending; equal distances
/// keep their insertion order, and the earlier-inserted user counts as
/// nearer wherever the model needs a strict order.
struct UserSet {
    std::vector<double> distances;       // sorted ascending
    std::vector<std::size_t> tie_order;  // insertion index per sorted slot
    double cell_radius_m = 0.0;
    double min_distance_m = 0.0;
    std::uint64_t seed = 0;
    bool seeded = false;

    std::size_t size() const { return distances.size(); }
};

/// Per-user powers for one allocation. powers/achieved_sinr align with the
/// UserSet's sorted order. An infeasible no-SIC system yields feasible =
/// false, empty powers and an infinite total.
struct AllocationResult {
    std::vector<double> powers;
    std::vector<double> achieved_sinr;
    double total_power = 0.0;
    Mode mode = Mode::Sic;
    bool feasible = true;
};

/// Builds a UserSet from raw distances (any order); validates the
/// [R_0, R_c] range and applies the stable tie-breaking order.
UserSet make_user_set(const std::vector<double>& distances, double min_distance_m,
                      double cell_radius_m);

/// n i.i.d. radii with the area-uniform law r = sqrt(R_0^2 + U (R_c^2-R_0^2)).
/// Deterministic for a fixed seed.
UserSet place_users_uniform(std::size_t n, double min_distance_m, double cell_radius_m,
                            std::uint64_t seed);

/// Deterministic equal-area radii r_k = sqrt(R_0^2 + (k-1/2)(R_c^2-R_0^2)/n):
/// the noise-free discretization of a uniform density.
UserSet place_users_rings(std::size_t n, double min_distance_m, double cell_radius_m);

/// SIC power allocation by the sequential recursion over ascending
/// distances: P_k = gamma* (S_{k-1} + (N_th/K) r_k^eta), S_k = S_{k-1} + P_k.
/// Always feasible; powers nondecreasing with distance.
AllocationResult solve_sic_allocation(const UserSet& users, double gamma_star,
                                      double pathloss_constant, double noise_w,
                                      double eta);

/// No-SIC allocation from the exact linear system:
///   P_total = (N_th/K) sum_u r_u^eta / (zeta - N),  P_u = (P_total + (N_th/K) r_u^eta)/zeta.
/// Infeasible (feasible = false) when N >= zeta, i.e. gamma* >= 1/(N-1).
AllocationResult solve_no_sic_allocation(const UserSet& users, double gamma_star,
                                         double pathloss_constant, double noise_w,
                                         double eta);

/// Recomputes every user's SINR from raw powers and pathloss, not from the
/// allocation recursion. SIC mode counts only strictly-nearer users as
/// interference (earlier tie order = nearer); no-SIC counts all others.
/// OpenMP-parallel over users; bitwise identical to verify_sinr_serial.
std::vector<double> verify_sinr(const UserSet& users, const AllocationResult& alloc,
                                double pathloss_constant, double noise_w, double eta);

/// Serial reference for verify_sinr, kept for tests and the benchmark.
std::vector<double> verify_sinr_serial(const UserSet& users,
                                       const AllocationResult& alloc,
                                       double pathloss_constant, double noise_w,
                                       double eta);

}  // namespace nomacell
