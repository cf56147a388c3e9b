#include "nomacell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace nomacell {

void Tolerance::check() const {
    if (!(rel > 0.0)) throw std::invalid_argument("Tolerance.rel must be > 0");
    if (!(abs >= 0.0)) throw std::invalid_argument("Tolerance.abs must be >= 0");
    if (max_iter < 1) throw std::invalid_argument("Tolerance.max_iter must be >= 1");
}

bracketing_error::bracketing_error(double lo, double hi, double f_lo, double f_hi)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "find_root: no sign change on bracket [" << lo << ", " << hi
             << "]: f(lo) = " << f_lo << ", f(hi) = " << f_hi;
          return os.str();
      }()),
      f_lo_(f_lo),
      f_hi_(f_hi) {}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half).
// Rows: abscissa, Gauss weight (0 on Kronrod-only nodes), Kronrod weight.
constexpr double kGK15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct Panel {
    double lo, hi;
    double value;   // K15 estimate
    double err;     // |G7 - K15|
    double resabs;  // K15 estimate of int |f|
};

Panel evaluate_panel(const std::function<double(double)>& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double y0 = f(mid);
    double g7 = kGK15[0][1] * y0;
    double k15 = kGK15[0][2] * y0;
    double resabs = kGK15[0][2] * std::abs(y0);
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15[i][0];
        const double ya = f(mid + dx);
        const double yb = f(mid - dx);
        g7 += kGK15[i][1] * (ya + yb);
        k15 += kGK15[i][2] * (ya + yb);
        resabs += kGK15[i][2] * (std::abs(ya) + std::abs(yb));
    }
    g7 *= half;
    k15 *= half;
    resabs *= half;
    return Panel{lo, hi, k15, std::abs(g7 - k15), resabs};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol) {
    tol.check();
    if (!(lo <= hi)) throw std::invalid_argument("integrate: requires lo <= hi");
    if (lo == hi) return 0.0;

    constexpr double eps = std::numeric_limits<double>::epsilon();

    std::vector<Panel> panels;
    panels.reserve(static_cast<std::size_t>(tol.max_iter) + 1);
    panels.push_back(evaluate_panel(f, lo, hi));

    for (int split = 0; split <= tol.max_iter; ++split) {
        double total = 0.0, total_err = 0.0;
        for (const Panel& p : panels) {
            total += p.value;
            total_err += p.err;
        }
        if (!std::isfinite(total))
            throw convergence_error("integrate: non-finite integrand value encountered");

        const double target = std::max(tol.abs, tol.rel * std::abs(total));
        if (total_err <= target) return total;

        // Bisect the panel with the worst estimate; panels already at the
        // roundoff floor of their own magnitude are not split further.
        auto worst = panels.end();
        double worst_err = 0.0;
        for (auto it = panels.begin(); it != panels.end(); ++it) {
            if (it->err > worst_err && it->err > 16.0 * eps * it->resabs) {
                worst_err = it->err;
                worst = it;
            }
        }
        if (worst == panels.end()) return total;  // stuck on roundoff: best achievable

        const Panel split_panel = *worst;
        const double mid = 0.5 * (split_panel.lo + split_panel.hi);
        *worst = evaluate_panel(f, split_panel.lo, mid);
        panels.push_back(evaluate_panel(f, mid, split_panel.hi));
    }
    throw convergence_error("integrate: no convergence after " +
                            std::to_string(tol.max_iter) + " bisections");
}

namespace {

// Series expansion of the regularized lower gamma, reliable for x < s + 1.
double lower_gamma_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    double sp = s;
    for (int i = 0; i < 500; ++i) {
        sp += 1.0;
        term *= x / sp;
        sum += term;
        if (std::abs(term) < std::abs(sum) * std::numeric_limits<double>::epsilon())
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
    }
    throw convergence_error("incomplete gamma: series did not converge");
}

// Lentz continued fraction for the regularized upper gamma, x >= s + 1.
double upper_gamma_contfrac(double s, double x) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= eps)
            return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
    }
    throw convergence_error("incomplete gamma: continued fraction did not converge");
}

void check_gamma_domain(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("incomplete gamma: requires s > 0");
    if (!(x >= 0.0)) throw std::domain_error("incomplete gamma: requires x >= 0");
}

}  // namespace

double regularized_lower_gamma(double s, double x) {
    check_gamma_domain(s, x);
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return lower_gamma_series(s, x);
    return 1.0 - upper_gamma_contfrac(s, x);
}

double regularized_upper_gamma(double s, double x) {
    check_gamma_domain(s, x);
    if (x == 0.0) return 1.0;
    if (x < s + 1.0) return 1.0 - lower_gamma_series(s, x);
    return upper_gamma_contfrac(s, x);
}

double lower_incomplete_gamma(double s, double x) {
    return regularized_lower_gamma(s, x) * std::tgamma(s);
}

double upper_incomplete_gamma(double s, double x) {
    return regularized_upper_gamma(s, x) * std::tgamma(s);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol) {
    tol.check();
    if (!(lo <= hi)) throw std::invalid_argument("find_root: requires lo <= hi");

    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) throw bracketing_error(lo, hi, fa, fb);

    // Brent: b is the current best iterate, a the previous one, c the last
    // point with f(c) opposite in sign to f(b).
    double c = a, fc = fa;
    double d = b - a, e = d;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int iter = 0; iter < tol.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol.rel * std::abs(b);
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || std::abs(fb) <= tol.abs) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic interpolation (secant when a == c).
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw convergence_error("find_root: no convergence after " +
                            std::to_string(tol.max_iter) + " iterations");
}

}  // namespace nomacell
