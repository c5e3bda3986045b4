#include "binform/forms.hpp"

#include <cmath>
#include <iterator>
#include <stdexcept>

namespace binform {

BinomialForm::BinomialForm(Int a_, Int b_, unsigned d_) : a(std::move(a_)), b(std::move(b_)), d(d_) {
    if (a == 0 || b == 0) throw std::invalid_argument("BinomialForm: coefficients must be nonzero");
    if (d < 3) throw std::invalid_argument("BinomialForm: degree must be at least 3");
}

Int eval_form(const BinomialForm& f, const Int& x, const Int& y) {
    return f.a * pow_int(x, f.d) + f.b * pow_int(y, f.d);
}

void Family::add(unsigned d, const Int& a, const Int& b) {
    if (d < 3) throw std::invalid_argument("Family::add: degree must be at least 3");
    if (a == 0 || b == 0) throw std::invalid_argument("Family::add: coefficients must be nonzero");
    entries_[d].insert(CoeffPair(a, b));
}

const CoeffSet* Family::at(unsigned d) const {
    auto it = entries_.find(d);
    return it == entries_.end() ? nullptr : &it->second;
}

unsigned Family::min_degree() const {
    if (entries_.empty()) throw std::logic_error("Family::min_degree: empty family");
    return entries_.begin()->first;
}

std::optional<Rational> dth_power_decompose(const Rational& r, unsigned d) {
    if (r.is_zero()) throw std::invalid_argument("dth_power_decompose: r must be nonzero");
    if (d == 0) throw std::invalid_argument("dth_power_decompose: d must be at least 1");
    if (d % 2 == 0 && r.sign() < 0) return std::nullopt;  // even powers are positive

    // r is in lowest terms, so (A/B)^d = r forces A^d = num, B^d = den.
    Int num = r.num(), den = r.den();
    Int a, b;
    if (!exact_root(abs(num), d, a)) return std::nullopt;
    if (!exact_root(den, d, b)) return std::nullopt;
    if (num < 0) a = -a;  // only reachable for odd d
    return Rational(a, b);
}

namespace {

bool is_dth_power_ratio(const Int& p, const Int& q, unsigned d) {
    return dth_power_decompose(Rational(p, q), d).has_value();
}

}  // namespace

bool forms_isomorphic(const BinomialForm& f, const BinomialForm& g) {
    if (f.d != g.d) return false;
    unsigned d = f.d;
    bool direct = is_dth_power_ratio(f.a, g.a, d) && is_dth_power_ratio(f.b, g.b, d);
    bool crossed = is_dth_power_ratio(f.a, g.b, d) && is_dth_power_ratio(f.b, g.a, d);
    return direct || crossed;
}

FamilyDiagnostics validate_family(const Family& fam) {
    FamilyDiagnostics diag;
    for (const auto& [d, pairs] : fam.entries()) {
        Int max_abs = 0;
        for (const auto& p : pairs) {
            Int m = abs(p.first) > abs(p.second) ? abs(p.first) : abs(p.second);
            if (m > max_abs) max_abs = m;
        }
        diag.cardinality_profile.push_back(
            {d, pairs.size(),
             std::log(static_cast<double>(pairs.size()) + 1.0) / static_cast<double>(d)});
        diag.max_coeff_profile.push_back({d, max_abs});

        // Each unordered pair of distinct coefficient pairs is reported once;
        // both conditions are symmetric since the inverse of a d-th power is
        // a d-th power.
        for (auto it = pairs.begin(); it != pairs.end(); ++it) {
            for (auto jt = std::next(it); jt != pairs.end(); ++jt) {
                const auto& [a1, b1] = *it;
                const auto& [a2, b2] = *jt;
                if (is_dth_power_ratio(a1, a2, d) && is_dth_power_ratio(b1, b2, d))
                    diag.direct_violations.push_back({d, *it, *jt});
                if (is_dth_power_ratio(a1, b2, d) && is_dth_power_ratio(b1, a2, d))
                    diag.crossed_violations.push_back({d, *it, *jt});
            }
        }
    }
    return diag;
}

Rational w_constant(const BinomialForm& f) {
    bool even = f.d % 2 == 0;
    auto root = dth_power_decompose(Rational(f.a, f.b), f.d);
    Rational w(1);
    if (root) {
        Int ab = abs(root->num() * root->den());
        w = Rational(1) - Rational(Int(1), 2 * ab);
    }
    if (even) w = w / Rational(4);
    return w;
}

}  // namespace binform
