#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace nomacell {

/// Shared accuracy knobs for the adaptive quadrature and the root finder.
/// rel > 0, abs >= 0, max_iter >= 1 (checked on use).
struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-14;
    int max_iter = 60;

    void check() const;
};

/// Thrown by find_root when f(lo) and f(hi) have the same sign.
/// Carries both endpoint values so callers can see how the bracket failed.
class bracketing_error : public std::runtime_error {
public:
    bracketing_error(double lo, double hi, double f_lo, double f_hi);
    double f_lo() const { return f_lo_; }
    double f_hi() const { return f_hi_; }

private:
    double f_lo_, f_hi_;
};

/// Thrown when an iterative scheme exhausts its budget without meeting
/// its tolerance. Never returns a silent partial result.
class convergence_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss(7)/Kronrod(15) quadrature of f over [lo, hi].
/// The interval with the worst local error estimate is bisected until the
/// summed estimate is below max(tol.abs, tol.rel*|I|); tol.max_iter bounds
/// the number of bisections.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol = {});

/// Lower incomplete gamma  gamma(s, x) = int_0^x t^{s-1} e^{-t} dt,  s > 0.
double lower_incomplete_gamma(double s, double x);

/// Upper incomplete gamma  Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt,  s > 0.
/// Satisfies gamma(s,x) + Gamma(s,x) = Gamma(s).
double upper_incomplete_gamma(double s, double x);

/// Regularized forms P = gamma(s,x)/Gamma(s) and Q = 1 - P.
double regularized_lower_gamma(double s, double x);
double regularized_upper_gamma(double s, double x);

/// Brent root finding on a sign-changing bracket [lo, hi].
/// Converges when |f(x)| <= tol.abs or the bracket shrinks below
/// tol.rel*|x|; inverse quadratic / secant steps fall back to bisection.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol = {});

}  // namespace nomacell
