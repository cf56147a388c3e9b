#include "nomacell/cell_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace nomacell {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void CellParams::check() const {
    if (!(cell_radius_m > 0.0))
        throw std::invalid_argument("cell_radius_m must be > 0");
    if (!(min_distance_m >= 0.0) || !(min_distance_m < cell_radius_m))
        throw std::invalid_argument("min_distance_m must satisfy 0 <= R_0 < R_c");
    if (!(pathloss_exponent > 2.0))
        throw std::invalid_argument("pathloss_exponent must be > 2");
    if (!(pathloss_constant > 0.0))
        throw std::invalid_argument("pathloss_constant must be > 0");
    if (!(noise_w > 0.0))
        throw std::invalid_argument("noise_w must be > 0");
    if (!(user_density >= 0.0))
        throw std::invalid_argument("user_density must be >= 0");
    if (!(sinr_target > 0.0))
        throw std::invalid_argument("sinr_target must be > 0");
}

std::string to_string(Mode m) {
    switch (m) {
        case Mode::Sic: return "sic";
        case Mode::NoSic: return "nosic";
        case Mode::Asymptote: return "asymptote";
    }
    return "?";
}

infeasible_error::infeasible_error(const std::string& what, double critical_density,
                                   double critical_sinr)
    : std::runtime_error(what),
      critical_density_(critical_density),
      critical_sinr_(critical_sinr) {}

Coefficients derive_coefficients(const CellParams& p) {
    p.check();
    Coefficients co;
    co.zeta = (p.sinr_target + 1.0) / p.sinr_target;
    co.a = 2.0 * kPi * p.user_density / co.zeta;
    co.b = p.noise_w * p.pathloss_exponent / (p.pathloss_constant * co.zeta);
    co.beta2 = kPi * p.user_density * p.cell_radius_m * p.cell_radius_m;
    co.beta = co.beta2 / co.zeta;
    co.c = p.noise_w / p.pathloss_constant;
    return co;
}

namespace {

// int_{lo}^{hi} s^{eta-1} exp(g*(r_ref^2 - s^2)/2) ds with the outer
// exponential folded into the integrand so large g never overflows
// before the result itself does.
double folded_power_integral(double eta, double g, double r_ref, double lo, double hi) {
    const Tolerance tol{1e-12, 1e-300, 200};
    return integrate(
        [eta, g, r_ref](double s) {
            return std::pow(s, eta - 1.0) * std::exp(0.5 * g * (r_ref * r_ref - s * s));
        },
        lo, hi, tol);
}

// Core of the total-power expressions: eta * e^x * int_{t0}^{1} t^{eta-1} e^{-x t^2} dt - 1,
// evaluated with the exponential folded in.
double total_power_factor(double eta, double x, double t0) {
    const Tolerance tol{1e-12, 1e-300, 200};
    const double integral = integrate(
        [eta, x](double t) { return std::pow(t, eta - 1.0) * std::exp(x * (1.0 - t * t)); },
        t0, 1.0, tol);
    return eta * integral - 1.0;
}

}  // namespace

double per_user_power(const CellParams& p, double r) {
    const Coefficients co = derive_coefficients(p);
    if (!(r >= p.min_distance_m) || !(r <= p.cell_radius_m)) {
        std::ostringstream os;
        os << "per_user_power: r = " << r << " outside [" << p.min_distance_m << ", "
           << p.cell_radius_m << "]";
        throw std::domain_error(os.str());
    }
    if (r == p.min_distance_m) return 0.0;
    return co.b * folded_power_integral(p.pathloss_exponent, co.a, r, p.min_distance_m, r);
}

double bs_power_sic(const CellParams& p) {
    const Coefficients co = derive_coefficients(p);
    if (p.user_density == 0.0) return 0.0;  // nobody to serve
    const double rc = p.cell_radius_m;
    const double x = 0.5 * co.a * rc * rc;  // equals beta
    const double factor = total_power_factor(p.pathloss_exponent, x, p.min_distance_m / rc);
    // The trailing R_0^eta term is the constant of integration fixed by
    // P(R_0) = 0; it keeps the total at exactly 2 pi rho int P(s) s ds for
    // a nonzero minimum distance (zero at rho = 0) and vanishes for R_0 = 0.
    return co.c * (std::pow(rc, p.pathloss_exponent) * factor +
                   std::pow(p.min_distance_m, p.pathloss_exponent));
}

double bs_power_sic_gamma_form(const CellParams& p) {
    const Coefficients co = derive_coefficients(p);
    if (p.min_distance_m != 0.0)
        throw std::invalid_argument(
            "bs_power_sic_gamma_form: only valid for R_0 = 0; use bs_power_sic "
            "(quadrature) for a nonzero minimum distance");
    if (co.beta == 0.0) return 0.0;
    const double eta = p.pathloss_exponent;
    const double g = lower_incomplete_gamma(0.5 * eta + 1.0, co.beta);
    return co.c * std::pow(p.cell_radius_m, eta) * std::exp(co.beta) *
           std::pow(co.beta, -0.5 * eta) * g;
}

double bs_power_sic_asymptotic(const CellParams& p) {
    const Coefficients co = derive_coefficients(p);
    if (p.user_density == 0.0) return 0.0;  // nobody to serve
    const double rc = p.cell_radius_m;
    // zeta -> 1 limit: beta2 replaces beta. The lower limit keeps R_0/R_c so
    // this stays the exact limit of bs_power_sic for any minimum distance.
    const double factor =
        total_power_factor(p.pathloss_exponent, co.beta2, p.min_distance_m / rc);
    return co.c * (std::pow(rc, p.pathloss_exponent) * factor +
                   std::pow(p.min_distance_m, p.pathloss_exponent));
}

double no_sic_critical_density(const CellParams& p) {
    const Coefficients co = derive_coefficients(p);
    const double area = kPi * (p.cell_radius_m * p.cell_radius_m -
                               p.min_distance_m * p.min_distance_m);
    return co.zeta / area;
}

double no_sic_critical_sinr(const CellParams& p) {
    p.check();
    const double load = kPi * p.user_density *
                        (p.cell_radius_m * p.cell_radius_m -
                         p.min_distance_m * p.min_distance_m);
    if (load <= 1.0) return kInf;  // every finite target stays feasible
    return 1.0 / (load - 1.0);
}

double bs_power_no_sic(const CellParams& p) {
    const Coefficients co = derive_coefficients(p);
    const double eta = p.pathloss_exponent;
    const double rc = p.cell_radius_m;
    const double ratio = p.min_distance_m / rc;
    const double load = co.beta2 * (1.0 - ratio * ratio);  // pi*rho*(R_c^2 - R_0^2)
    const double denom = co.zeta - load;
    if (denom <= 0.0) {
        std::ostringstream os;
        os << "bs_power_no_sic: infeasible, pi*rho*(R_c^2-R_0^2) = " << load
           << " >= zeta = " << co.zeta << " (critical density "
           << no_sic_critical_density(p) << " users/m^2, critical SINR "
           << no_sic_critical_sinr(p) << "); no finite power reaches the target "
           << "for all users without SIC";
        throw infeasible_error(os.str(), no_sic_critical_density(p),
                               no_sic_critical_sinr(p));
    }
    const double numer = 2.0 * kPi * p.user_density * co.c * std::pow(rc, eta + 2.0) *
                         (1.0 - std::pow(ratio, eta + 2.0)) / (eta + 2.0);
    return numer / denom;
}

double total_power(const CellParams& p, Mode mode) {
    switch (mode) {
        case Mode::Sic: return bs_power_sic(p);
        case Mode::NoSic: return bs_power_no_sic(p);
        case Mode::Asymptote: return bs_power_sic_asymptotic(p);
    }
    throw std::invalid_argument("total_power: unknown mode");
}

double spectral_efficiency(double sinr) {
    if (!(sinr > -1.0)) throw std::domain_error("spectral_efficiency: requires sinr > -1");
    return std::log2(1.0 + sinr);
}

double throughput(double sinr, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) throw std::domain_error("throughput: requires W > 0");
    return bandwidth_hz * spectral_efficiency(sinr);
}

double sinr_for_se(double se) {
    if (!(se >= 0.0)) throw std::domain_error("sinr_for_se: requires se >= 0");
    return std::exp2(se) - 1.0;
}

LinkQoS link_qos(double sinr, double bandwidth_hz) {
    return LinkQoS{sinr, spectral_efficiency(sinr), bandwidth_hz,
                   throughput(sinr, bandwidth_hz)};
}

double watts_to_dbm(double p_w) {
    if (!(p_w > 0.0)) throw std::domain_error("watts_to_dbm: requires P > 0");
    return 10.0 * std::log10(p_w * 1e3);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double density_from_users_per_cell(double n, double cell_radius_m,
                                   double min_distance_m) {
    if (!(n >= 0.0)) throw std::domain_error("users per cell must be >= 0");
    if (!(cell_radius_m > min_distance_m) || !(min_distance_m >= 0.0))
        throw std::domain_error("requires 0 <= R_0 < R_c");
    return n / (kPi * (cell_radius_m * cell_radius_m - min_distance_m * min_distance_m));
}

}  // namespace nomacell
