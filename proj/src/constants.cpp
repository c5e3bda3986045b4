#include "binform/constants.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>

namespace binform {

double theta_exponent(unsigned d) {
    if (d < 3) throw std::invalid_argument("theta_exponent: d must be at least 3");
    if (d == 3) {
        double s = std::sqrt(3.0);
        return (24.0 * s + 73.0) / (60.0 * s + 73.0);
    }
    if (d <= 20) {
        double s = std::sqrt(static_cast<double>(d));
        return (2.0 * s + 9.0) / (4.0 * d * s - 6.0 * s + 9.0);
    }
    return 1.0 / (static_cast<double>(d) - 1.0);
}

std::optional<unsigned> d_dagger(const Family& fam, unsigned d) {
    for (const auto& [deg, pairs] : fam.entries())
        if (deg > d && !pairs.empty()) return deg;
    return std::nullopt;
}

double two_over_ddagger(const std::optional<unsigned>& dd) {
    return dd ? 2.0 / static_cast<double>(*dd) : 0.0;
}

namespace {

// ---- slice integrands, written to stay accurate when x^d dwarfs 1 ----

// (1 - x^d)^{1/d} on [0, 1]: the y-extent of the definite region.
double definite_slice(double x, void* p) {
    double d = *static_cast<double*>(p);
    return std::exp(std::log1p(-std::pow(x, d)) / d);
}

// (1 + x^d)^{1/d} on [0, 1].
double inner_slice(double x, void* p) {
    double d = *static_cast<double*>(p);
    return std::exp(std::log1p(std::pow(x, d)) / d);
}

// (1 - x^d)^{1/d} + (1 + x^d)^{1/d} on [0, 1] (odd-degree inner part).
double odd_inner_slice(double x, void* p) {
    return definite_slice(x, p) + inner_slice(x, p);
}

// g(x) = (x^d + 1)^{1/d} - (x^d - 1)^{1/d} for x > 1: the width of the
// cancellation strip.  Naive evaluation loses everything to cancellation
// once x^d is large, so write g = x * e^t * expm1(s - t) with
// s = log1p(u)/d, t = log1p(-u)/d, u = x^{-d}.
double strip_width(double x, void* p) {
    double d = *static_cast<double*>(p);
    double u = std::pow(x, -d);
    if (u >= 1.0) {  // x == 1: width is 2^{1/d}
        return std::exp2(1.0 / d);
    }
    double s = std::log1p(u) / d;
    double t = std::log1p(-u) / d;
    return x * std::exp(t) * std::expm1(s - t);
}

// The same width integrated in u = 1/x: g(1/u) / u^2 on (0, 1].  The
// original domain [1, X] can span many decades (X grows like a power of the
// tolerance), which adaptive bisection flags as slowly convergent; in u the
// domain is bounded and the integrand stays O(1).
double strip_width_inv(double u, void* p) {
    return strip_width(1.0 / u, p) / (u * u);
}

// Upper bound for the truncated tail integral_X^inf g(x) dx, X > 1, d >= 3:
// concavity of t^{1/d} gives g(x) <= (2/d) (x^d - 1)^{(1-d)/d}, and
// (x^d - 1)^{(1-d)/d} <= (1 - X^{-d})^{(1-d)/d} x^{1-d} for x >= X.
double tail_bound(double X, double d) {
    double factor = std::pow(1.0 - std::pow(X, -d), (1.0 - d) / d);
    return (2.0 / d) * factor * std::pow(X, 2.0 - d) / (d - 2.0);
}

struct Workspace {
    gsl_integration_workspace* w;
    explicit Workspace(std::size_t n) : w(gsl_integration_workspace_alloc(n)) {}
    ~Workspace() { gsl_integration_workspace_free(w); }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
};

constexpr std::size_t kWorkspaceSize = 8192;

double integrate(double (*fn)(double, void*), double d, double lo, double hi, double epsabs,
                 double* abserr) {
    static const int once = [] {
        gsl_set_error_handler_off();
        return 0;
    }();
    (void)once;
    Workspace ws(kWorkspaceSize);
    gsl_function f;
    double deg = d;
    f.function = fn;
    f.params = &deg;
    double result = 0.0;
    int status = gsl_integration_qags(&f, lo, hi, epsabs, 0.0, kWorkspaceSize, ws.w, &result, abserr);
    // Roundoff-limited convergence still yields a usable error estimate; any
    // other failure is a certification failure for the caller to budget.
    if (status != 0 && status != GSL_EROUND) {
        throw certification_failure("quadrature did not converge: " +
                                    std::string(gsl_strerror(status)));
    }
    return result;
}

double definite_closed_form(unsigned d, double scale) {
    double dd = static_cast<double>(d);
    double g1 = std::tgamma(1.0 + 1.0 / dd);
    double g2 = std::tgamma(1.0 + 2.0 / dd);
    return scale * 4.0 * g1 * g1 / g2;
}

}  // namespace

AreaResult area_quadrature(const BinomialForm& f, double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("area_quadrature: tolerance must be positive");
    double d = static_cast<double>(f.d);

    // The substitution (x, y) -> (|a|^{1/d} x, |b|^{1/d} y) reduces to unit
    // coefficients and scales the area by |ab|^{-1/d}; for odd d a sign flip
    // of a variable removes coefficient signs, so only three shapes remain.
    double scale = std::exp(-log_abs(f.a * f.b) / d);
    double tol_c = tolerance / scale;

    double value_c = 0.0, err_c = 0.0;
    if (f.d % 2 == 0 && sgn(f.a) == sgn(f.b)) {
        // Bounded oval: 4 * int_0^1 (1 - x^d)^{1/d} dx.
        double abserr = 0.0;
        double I = integrate(definite_slice, d, 0.0, 1.0, tol_c / 4.0 * 0.9, &abserr);
        value_c = 4.0 * I;
        err_c = 4.0 * abserr;
    } else {
        // Unbounded region around the cancellation locus.  Inner part on
        // [0,1], strip width on [1, X], analytic bound beyond X.
        bool even = f.d % 2 == 0;
        double mult = even ? 4.0 : 2.0;
        double budget = tol_c / mult;

        double X = 2.0;
        while (tail_bound(X, d) > budget / 4.0) X *= 2.0;

        double err1 = 0.0, err2 = 0.0;
        double I1 = even ? integrate(inner_slice, d, 0.0, 1.0, budget * 0.3, &err1)
                         : integrate(odd_inner_slice, d, 0.0, 1.0, budget * 0.3, &err1);
        double I2 = integrate(strip_width_inv, d, 1.0 / X, 1.0, budget * 0.4, &err2);
        double tail = tail_bound(X, d);
        value_c = mult * (I1 + I2 + 0.5 * tail);
        err_c = mult * (err1 + err2 + 0.5 * tail);
    }

    double value = scale * value_c;
    double err = scale * err_c;
    if (!(err <= tolerance)) {
        throw certification_failure("quadrature error bound " + std::to_string(err) +
                                    " exceeds tolerance");
    }
    return {value, err, AreaMethod::quadrature};
}

AreaResult area_A_F(const BinomialForm& f, double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("area_A_F: tolerance must be positive");
    if (f.d % 2 == 0 && sgn(f.a) == sgn(f.b)) {
        double scale = std::exp(-log_abs(f.a * f.b) / static_cast<double>(f.d));
        double closed = definite_closed_form(f.d, scale);
        AreaResult quad = area_quadrature(f, tolerance);
        if (std::fabs(closed - quad.value) > 10.0 * tolerance) {
            throw certification_failure("closed form and quadrature disagree beyond tolerance");
        }
        return {closed, 1e-14 * closed, AreaMethod::closed_form_definite};
    }
    return area_quadrature(f, tolerance);
}

AreaResult density_constant(const BinomialForm& f, double tolerance) {
    AreaResult area = area_A_F(f, tolerance);
    double w = w_constant(f).to_double();
    return {area.value * w, area.absolute_error_bound * w + 1e-16 * area.value, area.method};
}

ThresholdParams::ThresholdParams(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {
    if (!(lambda > 2.0)) throw std::invalid_argument("ThresholdParams: lambda must exceed 2");
    if (!(mu > 0.0) || !(mu < mu_upper_bound()))
        throw std::invalid_argument("ThresholdParams: mu out of range (0, 2^-81 3^-15 (lambda-2)/lambda)");
}

double ThresholdParams::eta() {
    // 3^16 = 43046721 is exact in double, so this is the correctly rounded
    // value of 2^-81 * 3^-16.
    return 1.0 / std::ldexp(43046721.0, 81);
}

const Int& ThresholdParams::baker_c() {
    static const Int c = pow_int(Int(2), 79) * pow_int(Int(3), 15);
    return c;
}

double ThresholdParams::log_baker_c() { return 79.0 * M_LN2 + 15.0 * std::log(3.0); }

double ThresholdParams::mu_upper_bound() const {
    return (lambda - 2.0) / lambda / std::ldexp(14348907.0, 81);  // 3^15 = 14348907
}

AdmissibilityReport admissible_coefficients(const Family& fam, const ThresholdParams& params,
                                            unsigned d0, GrowthBound mode, const Int& x0) {
    if (d0 < 3) throw std::invalid_argument("admissible_coefficients: d0 must be at least 3");
    if (mode == GrowthBound::x0_form && x0 < 2)
        throw std::invalid_argument("admissible_coefficients: x0 must be at least 2");
    AdmissibilityReport report;
    report.all_admissible = true;
    double log_x0 = mode == GrowthBound::x0_form ? log_abs(x0) : 0.0;
    for (const auto& [d, pairs] : fam.entries()) {
        if (d < d0 || pairs.empty()) continue;
        Int max_abs = 1;
        for (const auto& [a, b] : pairs) {
            Int m = abs(a) > abs(b) ? abs(a) : abs(b);
            if (m > max_abs) max_abs = m;
        }
        double dd = static_cast<double>(d);
        double log_bound;
        bool ok;
        switch (mode) {
            case GrowthBound::mu_form:
                log_bound = params.mu * dd / std::log(dd);
                ok = log_abs(max_abs) <= log_bound;
                break;
            case GrowthBound::eta_form:
                log_bound = ThresholdParams::eta() * dd / std::log(dd);
                ok = log_abs(max_abs) <= log_bound;
                break;
            case GrowthBound::x0_form:
                log_bound = dd / static_cast<double>(d0) * log_x0;
                // max <= x0^{d/d0}  <=>  max^{d0} <= x0^d, decided exactly.
                ok = pow_int(max_abs, d0) <= pow_int(x0, d);
                break;
        }
        double log_max = log_abs(max_abs);
        report.rows.push_back({d, ok, log_max, log_bound, std::exp(log_max - log_bound)});
        report.all_admissible = report.all_admissible && ok;
    }
    return report;
}

}  // namespace binform
