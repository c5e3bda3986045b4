#include "binform/probes.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "binform/constants.hpp"

namespace binform {

namespace {

double log_rational_abs(const Rational& r) {
    return log_abs(r.num()) - log_abs(r.den());
}

}  // namespace

BakerResult baker_check(const BakerInput& input) {
    if (input.b1 < 1 || input.b2 < 1)
        throw std::invalid_argument("baker_check: exponents must be positive integers");
    if (input.a1.is_zero() || input.a2.is_zero())
        throw std::invalid_argument("baker_check: a1, a2 must be nonzero");

    Rational product = input.a1.pow(input.b1) * input.a2.pow(input.b2);
    if (product == Rational(1))
        throw hypothesis_error("baker_check: a1^b1 a2^b2 = 1 (bound hypothesis fails)");

    Rational lhs = product - Rational(1);
    double log_lhs = log_rational_abs(lhs);
    double log_b = std::log(std::max({std::exp(1.0), static_cast<double>(input.b1),
                                      static_cast<double>(input.b2)}));
    double log_a1 = std::max(input.a1.log_height(), 1.0);
    double log_a2 = std::max(input.a2.log_height(), 1.0);
    double log_rhs = -ThresholdParams::baker_c().get_d() * log_b * log_a1 * log_a2;
    double lhs_d = std::fabs(lhs.to_double());
    return {lhs_d, log_lhs, log_rhs, log_lhs >= log_rhs};
}

DominantTermResult dominant_term_check(unsigned d, const Int& a, const Int& b, const Int& x,
                                const Int& y) {
    if (d < 2) throw std::invalid_argument("dominant_term_check: d must be at least 2");
    Int A = abs(a) > abs(b) ? abs(a) : abs(b);
    Int X = abs(x) > abs(y) ? abs(x) : abs(y);
    if (A < 2) throw std::invalid_argument("dominant_term_check: max(|a|,|b|) must be at least 2");
    if (X < 2) throw std::invalid_argument("dominant_term_check: max(|x|,|y|) must be at least 2");
    Int t1 = a * pow_int(x, d), t2 = b * pow_int(y, d);
    Int value = t1 + t2;
    if (value == 0) throw hypothesis_error("dominant_term_check: a x^d + b y^d vanishes");

    Int dominant = abs(t1) > abs(t2) ? abs(t1) : abs(t2);
    double c = ThresholdParams::baker_c().get_d();
    double log_d = std::log(static_cast<double>(d));
    double log_x = log_abs(X);
    double log_a = log_abs(A);
    double log_rhs = log_abs(dominant) - 4.0 * c * log_d * log_x * log_a;
    double log_lhs = log_abs(value);
    double exponent = static_cast<double>(d) - 4.0 * c * log_d * log_a;
    return {abs(value), log_lhs, log_rhs, log_lhs >= log_rhs, exponent, exponent <= 0.0};
}

namespace {

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

// Pollard's rho with Floyd cycle detection; n must be odd, composite, > 1.
Int pollard_rho(const Int& n) {
    for (unsigned long c = 1;; ++c) {
        Int x(2), y(2), d(1);
        auto step = [&](Int v) { return Int((v * v + c) % n); };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            Int diff = abs(x - y);
            if (diff == 0) break;  // cycle without factor: retry with new c
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(const Int& n, std::set<Int>& primes) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        primes.insert(n);
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, primes);
    factor_into(Int(n / d), primes);
}

}  // namespace

Int radical(const Int& m) {
    if (m < 1) throw std::invalid_argument("radical: m must be a positive integer");
    Int rest = m;
    std::set<Int> primes;
    // Strip small primes first; rho only sees odd composites.
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        if (rest % p == 0) {
            primes.insert(Int(p));
            while (rest % p == 0) rest /= p;
        }
    }
    factor_into(rest, primes);
    Int rad(1);
    for (const Int& p : primes) rad *= p;
    return rad;
}

namespace {

double kappa_value(unsigned d, const Int& a, const Int& b, const Int& x, const Int& y,
                   double eps, Int* m_out) {
    Int A = abs(a) > abs(b) ? abs(a) : abs(b);
    Int X = abs(x) > abs(y) ? abs(x) : abs(y);
    if (A < 1) throw std::invalid_argument("abc_required_kappa: max(|a|,|b|) must be at least 1");
    if (X < 2) throw std::invalid_argument("abc_required_kappa: max(|x|,|y|) must be at least 2");
    Int m = a * pow_int(x, d) + b * pow_int(y, d);
    if (m == 0) throw hypothesis_error("abc_required_kappa: a x^d + b y^d vanishes");
    if (m_out) *m_out = m;
    double dd = static_cast<double>(d);
    double log_kappa = (dd - 2.0 - 2.0 * eps) * log_abs(X) - (1.0 + 2.0 * eps) * log_abs(A) -
                       (1.0 + eps) * log_abs(m);
    return std::exp(log_kappa);
}

}  // namespace

double abc_required_kappa(unsigned d, const Int& a, const Int& b, const Int& x, const Int& y,
                          double eps) {
    if (d < 2) throw std::invalid_argument("abc_required_kappa: d must be at least 2");
    if (!(eps > 0.0))
        throw std::invalid_argument("abc_required_kappa: eps must be positive (eps = 0 is scan-mode only)");
    return kappa_value(d, a, b, x, y, eps, nullptr);
}

AbcScanReport abc_scan(const Family& fam, unsigned d, std::int64_t box, double eps) {
    if (box < 2) throw std::invalid_argument("abc_scan: box must be at least 2");
    if (!(eps >= 0.0)) throw std::invalid_argument("abc_scan: eps must be nonnegative");
    AbcScanReport report;
    report.max_kappa = 0.0;
    for (const auto& [deg, pairs] : fam.entries()) {
        if (deg < d) continue;
        for (const auto& [a, b] : pairs) {
            for (std::int64_t xi = -box; xi <= box; ++xi) {
                for (std::int64_t yi = -box; yi <= box; ++yi) {
                    Int x(xi), y(yi);
                    Int X = abs(x) > abs(y) ? abs(x) : abs(y);
                    if (X < 2) continue;
                    Int m = a * pow_int(x, deg) + b * pow_int(y, deg);
                    if (m == 0) continue;
                    double kappa = kappa_value(deg, a, b, x, y, eps, nullptr);
                    report.rows.push_back({deg, a, b, x, y, m, kappa});
                    report.max_kappa = std::max(report.max_kappa, kappa);
                }
            }
        }
    }
    return report;
}

namespace {

struct MpfrValue {
    mpfr_t v;
    explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~MpfrValue() { mpfr_clear(v); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
};

// log with directed rounding, composed as log(round(z)) so the result is a
// true one-sided bound (log is monotone).
void log_z(mpfr_t out, const Int& z, mpfr_rnd_t rnd, mpfr_prec_t prec) {
    MpfrValue t(prec);
    mpfr_set_z(t.v, z.get_mpz_t(), rnd);
    mpfr_log(out, t.v, rnd);
}

// Certified double value of log(num/den) for positive num, den, num != den,
// by escalating the working precision until the enclosure is tight.
double log_rational_certified(const Int& num, const Int& den) {
    for (mpfr_prec_t prec = 64; prec <= (mpfr_prec_t{1} << 20); prec *= 2) {
        MpfrValue ln_lo(prec), ln_hi(prec), ld_lo(prec), ld_hi(prec), lo(prec), hi(prec);
        log_z(ln_lo.v, num, MPFR_RNDD, prec);
        log_z(ln_hi.v, num, MPFR_RNDU, prec);
        log_z(ld_lo.v, den, MPFR_RNDD, prec);
        log_z(ld_hi.v, den, MPFR_RNDU, prec);
        mpfr_sub(lo.v, ln_lo.v, ld_hi.v, MPFR_RNDD);
        mpfr_sub(hi.v, ln_hi.v, ld_lo.v, MPFR_RNDU);
        double dlo = mpfr_get_d(lo.v, MPFR_RNDD);
        double dhi = mpfr_get_d(hi.v, MPFR_RNDU);
        double mag = std::max(std::fabs(dlo), std::fabs(dhi));
        if (dlo * dhi > 0.0 && dhi - dlo <= 1e-9 * mag)
            return 0.5 * (dlo + dhi);
    }
    throw certification_failure("log of rational could not be certified");
}

}  // namespace

double lang_required_C(const std::vector<Rational>& a, const std::vector<long>& b, double eps) {
    if (a.empty() || a.size() != b.size())
        throw std::invalid_argument("lang_required_C: need equally many a_j and b_j, at least one");
    if (!(eps >= 0.0)) throw std::invalid_argument("lang_required_C: eps must be nonnegative");
    for (const auto& aj : a)
        if (!(aj > Rational(0)))
            throw std::invalid_argument("lang_required_C: a_j must be positive");

    // sum b_j log a_j = log prod a_j^{b_j}; exact rational arithmetic decides
    // vanishing, MPFR evaluates the nonzero value.
    Rational product(1);
    for (std::size_t j = 0; j < a.size(); ++j) product = product * a[j].pow(b[j]);
    if (product == Rational(1))
        throw hypothesis_error("lang_required_C: linear form vanishes exactly");
    double log_form = log_rational_certified(product.num(), product.den());

    double n = static_cast<double>(a.size());
    double log_b_prod = 0.0, log_a_prod = 0.0, log_b_max = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double bj = std::max(std::fabs(static_cast<double>(b[j])), 1.0);
        log_b_prod += std::log(bj);
        log_b_max = std::max(log_b_max, std::log(bj));
        log_a_prod += 2.0 * std::max(a[j].log_height(), 0.0);
    }
    double log_c = (std::log(std::fabs(log_form)) +
                    (1.0 + eps) * (log_b_prod + log_a_prod) - log_b_max) /
                   n;
    return std::exp(log_c);
}

EllForm ell_staircase_form(unsigned d) {
    if (d < 3) throw std::invalid_argument("ell_staircase_form: d must be at least 3");
    unsigned k = 2;
    while ((k + 1) * (k + 2) / 2 <= d) ++k;
    unsigned j = d - k * (k + 1) / 2;
    EllForm f{d, pow_int(Int(2), j)};
    // Defining identities of the family.
    if (f.eval(Int(d), Int(1)) != f.ell || f.eval(Int(d) + 1, Int(1)) != f.ell + 1 ||
        f.eval(Int(d) - 1, Int(1)) != f.ell + 1)
        throw std::logic_error("ell_staircase_form: identity check failed");
    return f;
}

Int EllForm::eval(const Int& x, const Int& y) const {
    return pow_int(x - Int(d) * y, 2 * d) + ell * pow_int(y, 2 * d);
}

bool ell_growth_condition(unsigned d, const Int& ell, double kappa, unsigned d0) {
    if (ell < 1) throw std::invalid_argument("ell_growth_condition: ell must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("ell_growth_condition: kappa must be positive");
    double rhs = (static_cast<double>(d) - static_cast<double>(d0)) *
                 (std::log(static_cast<double>(d)) - std::log(kappa));
    return log_abs(ell) >= rhs;
}

namespace {

void check_regularity_params(const RegularityParams& p) {
    if (p.A < 1 || p.A1 < 1)
        throw std::invalid_argument("RegularityParams: A and A1 must be at least 1");
    if (p.d1 < p.d0) throw std::invalid_argument("RegularityParams: d1 must be at least d0");
    if (!(p.kappa > 0.0) || !(p.kappa < p.A.get_d()))
        throw std::invalid_argument("RegularityParams: need 0 < kappa < A");
}

}  // namespace

RegularityReport regularity_probe(const Family& fam, const RegularityParams& params, double eps,
                                  std::int64_t n, unsigned d_min) {
    check_regularity_params(params);
    if (params.A < 2)
        throw std::invalid_argument("regularity_probe: A must be at least 2 for the witness engine");
    if (!(eps > 0.0)) throw std::invalid_argument("regularity_probe: eps must be positive");

    SearchPolicy policy;
    CountReport counts = count_represented(fam, d_min, n, params.A, policy);

    unsigned d_threshold = std::max(params.d1, params.d0 + 1);
    RegularityReport report{counts.count, std::pow(static_cast<double>(n), eps),
                            false, {}, counts.complete};
    report.passes = static_cast<double>(report.count) <= report.bound;

    double log_kappa = std::log(params.kappa);
    visit_window_witnesses(fam, d_min, n, params.A, policy, [&](const Representation& rep) {
        if (rep.d < d_threshold || rep.m == 0) return;
        Int X = abs(rep.x) > abs(rep.y) ? abs(rep.x) : abs(rep.y);
        double limit = log_kappa + log_abs(rep.m) / (static_cast<double>(rep.d) - params.d0);
        if (log_abs(X) > limit + 1e-12) report.size_bound_violations.push_back(rep);
    });
    return report;
}

EllRegularityReport ell_regularity_probe(unsigned d_lo, unsigned d_hi,
                                         const RegularityParams& params, double eps,
                                         std::int64_t n) {
    check_regularity_params(params);
    if (d_lo < 3 || d_hi < d_lo) throw std::invalid_argument("ell_regularity_probe: bad index range");
    if (!(eps > 0.0)) throw std::invalid_argument("ell_regularity_probe: eps must be positive");
    if (n < 1) throw std::invalid_argument("ell_regularity_probe: window must be positive");

    EllRegularityReport report;
    report.bound = std::pow(static_cast<double>(n), eps);
    std::set<std::int64_t> values;
    double log_kappa = std::log(params.kappa);
    for (unsigned d = d_lo; d <= d_hi; ++d) {
        EllForm f = ell_staircase_form(d);
        report.growth_rows.push_back({d, f.ell, ell_growth_condition(d, f.ell, params.kappa, params.d0)});
        unsigned deg = f.degree();
        // Both terms are nonnegative, so |y| and x - d y are boxed by n.
        Int vy = floor_root(fdiv(Int(n), f.ell), deg);
        Int vu = floor_root(Int(n), deg);
        unsigned d_threshold = std::max(params.d1, params.d0 + 1);
        for (Int y = -vy; y <= vy; ++y) {
            for (Int u = -vu; u <= vu; ++u) {
                Int x = u + Int(d) * y;
                Int X = abs(x) > abs(y) ? abs(x) : abs(y);
                if (X < params.A) continue;
                Int m = f.eval(x, y);
                if (m > n) continue;
                values.insert(to_long(m));
                if (deg >= d_threshold && m != 0) {
                    double limit = log_kappa + log_abs(m) / (static_cast<double>(deg) - params.d0);
                    if (log_abs(X) > limit + 1e-12)
                        report.size_bound_violations.push_back({d, x, y, m});
                }
            }
        }
    }
    report.count = values.size();
    report.passes = static_cast<double>(report.count) <= report.bound;
    return report;
}

}  // namespace binform
