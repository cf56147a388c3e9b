#pragma once

#include <stdexcept>
#include <string>

#include "nomacell/numerics.hpp"

namespace nomacell {

/// Full physical description of one downlink cell. All quantities linear
/// and SI: meters, watts, users/m^2. SINR target is linear, not dB.
struct CellParams {
    double cell_radius_m = 0.0;    // R_c
    double min_distance_m = 0.0;   // R_0, minimum BS-user distance
    double pathloss_exponent = 0;  // eta, > 2
    double pathloss_constant = 0;  // K, gain at the 1 m reference
    double noise_w = 0.0;          // thermal noise power N_th
    double user_density = 0.0;     // rho, users/m^2
    double sinr_target = 0.0;      // gamma*, linear

    void check() const;  // throws std::invalid_argument naming the bad field
};

/// Derived scalars shared by every closed form.
struct Coefficients {
    double zeta;   // (gamma*+1)/gamma*, always > 1
    double a;      // 2*pi*rho/zeta
    double b;      // N_th*eta/(K*zeta)
    double beta;   // pi*rho*R_c^2/zeta
    double beta2;  // pi*rho*R_c^2
    double c;      // N_th/K, the recurring noise-over-gain factor
};

/// SINR together with the QoS figures it implies.
struct LinkQoS {
    double sinr;           // linear
    double se;             // bits/s/Hz
    double bandwidth_hz;
    double throughput;     // bits/s
};

enum class Mode { Sic, NoSic, Asymptote };

std::string to_string(Mode m);

/// Thrown when no finite power satisfies the SINR target (no-SIC regime
/// past the density/SINR wall). Carries where the wall sits.
class infeasible_error : public std::runtime_error {
public:
    infeasible_error(const std::string& what, double critical_density,
                     double critical_sinr);
    double critical_density() const { return critical_density_; }
    double critical_sinr() const { return critical_sinr_; }

private:
    double critical_density_, critical_sinr_;
};

Coefficients derive_coefficients(const CellParams& p);

/// Power transmitted towards the user at distance r under SIC:
///   P(r) = b exp(a r^2/2) int_{R_0}^{r} s^{eta-1} exp(-a s^2/2) ds.
/// Zero at r = R_0, strictly increasing beyond. r outside [R_0, R_c]
/// is a domain error.
double per_user_power(const CellParams& p, double r);

/// Total BS power with SIC, evaluated by quadrature:
///   (N_th/K) [R_c^eta (eta e^beta int_{R_0/R_c}^{1} t^{eta-1} e^{-beta t^2} dt - 1) + R_0^eta],
/// the closed form of 2 pi rho int_{R_0}^{R_c} P(s) s ds; the R_0^eta term
/// is the constant of integration fixed by P(R_0) = 0.
double bs_power_sic(const CellParams& p);

/// Same quantity through the incomplete-gamma identity
///   (N_th/K) R_c^eta e^beta beta^{-eta/2} gamma((eta+2)/2, beta),
/// valid for R_0 = 0 only (otherwise throws std::invalid_argument
/// pointing at the quadrature form).
double bs_power_sic_gamma_form(const CellParams& p);

/// Limit of bs_power_sic as gamma* -> inf (zeta -> 1): the plateau level
/// of the power-vs-SE curve. Upper bound on bs_power_sic for any finite
/// target.
double bs_power_sic_asymptotic(const CellParams& p);

/// Total BS power without SIC:
///   [2 pi rho (N_th/K) R_c^{eta+2} (1-(R_0/R_c)^{eta+2})/(eta+2)]
///     / [zeta - pi rho R_c^2 (1-(R_0/R_c)^2)].
/// Throws infeasible_error when the denominator is <= 0.
double bs_power_no_sic(const CellParams& p);

/// No-SIC feasibility wall for these params: density above which (resp.
/// SINR target above which) no finite power works. critical_sinr is
/// +inf when the density is low enough that every target is feasible.
double no_sic_critical_density(const CellParams& p);
double no_sic_critical_sinr(const CellParams& p);

/// Forward power for the given mode (Asymptote ignores sinr_target).
double total_power(const CellParams& p, Mode mode);

double spectral_efficiency(double sinr);                // log2(1+sinr)
double throughput(double sinr, double bandwidth_hz);    // W*log2(1+sinr)
double sinr_for_se(double se);                          // 2^se - 1
LinkQoS link_qos(double sinr, double bandwidth_hz);

double watts_to_dbm(double p_w);  // domain error for p_w <= 0
double dbm_to_watts(double dbm);
double density_from_users_per_cell(double n, double cell_radius_m,
                                   double min_distance_m = 0.0);

}  // namespace nomacell
