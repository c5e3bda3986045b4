#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace binform {

using Int = mpz_class;

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Floor division (rounds toward -inf, matching the sign conventions needed
// when dividing interval endpoints by a negative coefficient).
inline Int fdiv(const Int& n, const Int& d) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Int cdiv(const Int& n, const Int& d) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

// Largest r with r^d <= t.  For even d the argument must be nonnegative and
// the result is the nonnegative root; for odd d any sign is accepted.
// mpz_root truncates toward zero, which for negative operands rounds up,
// hence the fix-up step.
inline Int floor_root(const Int& t, unsigned long d) {
    if (d == 0) throw std::invalid_argument("floor_root: d must be positive");
    if (d % 2 == 0 && t < 0)
        throw std::invalid_argument("floor_root: negative argument with even degree");
    Int r;
    mpz_root(r.get_mpz_t(), t.get_mpz_t(), d);
    if (pow_int(r, d) > t) --r;
    return r;
}

// Smallest r with r^d >= t (same domain restrictions as floor_root).
inline Int ceil_root(const Int& t, unsigned long d) {
    Int r = floor_root(t, d);
    if (pow_int(r, d) < t) ++r;
    return r;
}

// Exact d-th root: sets root and returns true iff t is a perfect d-th power
// (with root >= 0 when d is even).
inline bool exact_root(const Int& t, unsigned long d, Int& root) {
    if (d == 0) throw std::invalid_argument("exact_root: d must be positive");
    if (d % 2 == 0 && t < 0) return false;
    Int r;
    int exact = mpz_root(r.get_mpz_t(), t.get_mpz_t(), d);
    if (!exact) return false;
    root = r;
    return true;
}

// log|z| for nonzero z, stable for operands far beyond double range.
inline double log_abs(const Int& z) {
    if (z == 0) throw std::domain_error("log_abs: zero argument");
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * M_LN2;
}

inline bool fits_long(const Int& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

inline long to_long(const Int& z) {
    if (!fits_long(z)) throw std::overflow_error("integer exceeds native range: " + z.get_str());
    return mpz_get_si(z.get_mpz_t());
}

}  // namespace binform
