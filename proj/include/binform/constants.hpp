#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "binform/forms.hpp"

namespace binform {

// Saving exponent theta_d for the counting error term:
//   d = 3:            (24*sqrt(3) + 73) / (60*sqrt(3) + 73)
//   4 <= d <= 20:     (2*sqrt(d) + 9) / (4*d*sqrt(d) - 6*sqrt(d) + 9)
//   d >= 21:          1 / (d - 1)
// Always strictly below 2/d.  Rejects d < 3.
double theta_exponent(unsigned d);

// Smallest listed degree d' > d with a nonempty coefficient set, or an empty
// optional when no such degree exists (the "infinite" case — then the
// second-order term 2/d' is zero).
std::optional<unsigned> d_dagger(const Family& fam, unsigned d);

// 2/d' with the convention that the infinite case contributes 0.
double two_over_ddagger(const std::optional<unsigned>& dd);

enum class AreaMethod { closed_form_definite, quadrature };

struct AreaResult {
    double value;
    double absolute_error_bound;
    AreaMethod method;
};

// Area of {(x, y) in R^2 : |a x^d + b y^d| <= 1}.  For even d with same-sign
// coefficients the closed Gamma-function form is used (and cross-checked
// against quadrature); otherwise certified slice quadrature.  Throws
// certification_failure when the requested tolerance cannot be certified.
AreaResult area_A_F(const BinomialForm& f, double tolerance);

// The quadrature path regardless of shape, exposed for cross-checks.
AreaResult area_quadrature(const BinomialForm& f, double tolerance);

// Density constant C_{a,b} = A_F * W_F with the area error propagated.
AreaResult density_constant(const BinomialForm& f, double tolerance);

// Raised when a numerical result cannot be certified to the requested
// tolerance (distinct from usage errors; maps to its own process exit code).
struct certification_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameters tying coefficient growth to the large-solution threshold:
// lambda > 2, 0 < mu < 2^-81 * 3^-15 * (lambda-2)/lambda, the fixed constant
// eta = 2^-81 * 3^-16, and the linear-forms constant C = 2^79 * 3^15 kept
// exact.
struct ThresholdParams {
    double lambda;
    double mu;

    ThresholdParams(double lambda_, double mu_);

    static double eta();              // 2^-81 * 3^-16
    static const Int& baker_c();      // 2^79 * 3^15, exact
    static double log_baker_c();      // log of the above
    double mu_upper_bound() const;    // 2^-81 * 3^-15 * (lambda-2)/lambda
};

enum class GrowthBound { mu_form, eta_form, x0_form };

struct AdmissibilityRow {
    unsigned d;
    bool admissible;
    double log_max_coeff;  // log max(|a|,|b|) over the degree's listed pairs
    double log_bound;
    double slack;          // max(|a|,|b|) / bound
};

struct AdmissibilityReport {
    std::vector<AdmissibilityRow> rows;
    bool all_admissible;
};

// Check max(|a|,|b|) <= bound(d) for every pair of every listed degree
// d >= d0, where bound is exp(mu*d/log d), exp(eta*d/log d) or X0^{d/d0}
// according to the selected mode.  The X0-form comparison is exact
// (A^{d0} <= X0^d over the integers); the others compare in log space.
AdmissibilityReport admissible_coefficients(const Family& fam, const ThresholdParams& params,
                                            unsigned d0, GrowthBound mode, const Int& x0 = Int(2));

}  // namespace binform
