#pragma once

#include <cstdint>
#include <vector>

#include "binform/enumeration.hpp"
#include "binform/forms.hpp"

namespace binform {

// Raised when an operation's mathematical hypothesis fails (a degenerate
// product, a vanishing linear form, ...), as opposed to malformed input.
struct hypothesis_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Inputs for the two-term linear-form bound: nonzero rationals a1, a2 and
// positive integer exponents.  The derived quantities use the sharpest
// admissible values B = max(e, b1, b2) and log A_j = max(h(a_j), 1).
struct BakerInput {
    Rational a1, a2;
    long b1, b2;
};

struct BakerResult {
    double lhs;      // |a1^b1 a2^b2 - 1|, +inf if beyond double range
    double log_lhs;  // exact-rational logarithm of the above
    double log_rhs;  // -C log B log A1 log A2 with C = 2^79 3^15
    bool holds;      // log_lhs >= log_rhs
};

// Check |a1^b1 a2^b2 - 1| >= exp(-C log B log A1 log A2).  The left side is
// evaluated exactly; the comparison happens in log space because the right
// side is far below double range.  Rejects the product-equals-one case.
BakerResult baker_check(const BakerInput& input);

struct DominantTermResult {
    Int lhs;  // |a x^d + b y^d|
    double log_lhs;
    double log_rhs;  // log max(|a x^d|, |b y^d|) - 4 C log d log X log A
    bool holds;
    double exponent;  // d - 4 C log d log A, the X-power the bound certifies
    bool exponent_vacuous;  // exponent <= 0: weaker than trivial
};

// Lower bound for |a x^d + b y^d| against the dominant term, requiring
// d >= 2, max(|a|,|b|) >= 2, max(|x|,|y|) >= 2 and a nonzero value.
DominantTermResult dominant_term_check(unsigned d, const Int& a, const Int& b, const Int& x, const Int& y);

// Product of the distinct primes dividing m (m >= 1; radical(1) = 1).
Int radical(const Int& m);

// kappa forced by one instance of the abc-flavoured inequality:
// X^{d-2-2eps} / (A^{1+2eps} |m|^{1+eps}).  Requires m != 0, X >= 2,
// A = max(|a|,|b|) >= 1 and eps > 0 (eps = 0 is reserved for scan mode).
double abc_required_kappa(unsigned d, const Int& a, const Int& b, const Int& x, const Int& y,
                          double eps);

struct AbcRow {
    unsigned d;
    Int a, b, x, y, m;
    double kappa;
};

struct AbcScanReport {
    std::vector<AbcRow> rows;  // sorted by (d, a, b, x, y)
    double max_kappa;
};

// Scan |x|, |y| <= box across listed degrees >= d, skipping instances that
// fail the hypotheses (m = 0 or X < 2).  eps = 0 is allowed here as the
// normalization.
AbcScanReport abc_scan(const Family& fam, unsigned d, std::int64_t box, double eps);

// Smallest constant which the conjectural n-term lower bound would tolerate
// on this instance: (|sum b_j log a_j| (prod B_j prod A_j^2)^{1+eps} / B)^{1/n}.
// The linear form is tested for exact vanishing over the rationals before
// evaluation.  Requires positive a_j, eps >= 0.
double lang_required_C(const std::vector<Rational>& a, const std::vector<long>& b, double eps);

// Member of the shifted staircase family: (X - dY)^{2d} + ell_d Y^{2d} with
// ell_d = 2^j for d = k(k+1)/2 + j, k >= 2, 0 <= j <= k.  The defining
// identities F(d, 1) = ell and F(d±1, 1) = ell + 1 are re-verified on
// construction.
struct EllForm {
    unsigned d;
    Int ell;
    Int eval(const Int& x, const Int& y) const;
    unsigned degree() const { return 2 * d; }
};

EllForm ell_staircase_form(unsigned d);

// Coefficient-growth condition ell >= (d / kappa)^{d - d0}.
bool ell_growth_condition(unsigned d, const Int& ell, double kappa, unsigned d0);

struct RegularityParams {
    Int A = Int(2);
    Int A1 = Int(1);
    unsigned d0 = 0;
    unsigned d1 = 3;
    double kappa = 1.0;
};

struct RegularityReport {
    std::uint64_t count;  // represented integers in [-n, n]
    double bound;         // n^eps
    bool passes;          // count <= bound
    std::vector<Representation> size_bound_violations;
    bool complete;
};

// Empirical sparseness check: count represented integers (degree >= d_min,
// max(|x|,|y|) >= A) against n^eps, and test every enumerated witness of
// degree >= max(d1, d0+1) with nonzero value against
// max(|x|,|y|) <= kappa |m|^{1/(d - d0)}.  Requires A >= 2 and eps > 0.
RegularityReport regularity_probe(const Family& fam, const RegularityParams& params, double eps,
                                  std::int64_t n, unsigned d_min);

struct EllViolation {
    unsigned d;  // family index; the form degree is 2d
    Int x, y, m;
};

struct EllRegularityReport {
    std::uint64_t count;
    double bound;
    bool passes;
    std::vector<EllViolation> size_bound_violations;
    struct GrowthRow {
        unsigned d;
        Int ell;
        bool holds;
    };
    std::vector<GrowthRow> growth_rows;
};

// Same probe for the staircase family truncated to indices d_lo..d_hi; the
// forms are positive definite, so the enumeration is exhaustive.  The
// size-bound exponent uses the true form degree 2d, while the per-index
// growth condition rows use the printed exponent d - d0.
EllRegularityReport ell_regularity_probe(unsigned d_lo, unsigned d_hi,
                                         const RegularityParams& params, double eps,
                                         std::int64_t n);

}  // namespace binform
