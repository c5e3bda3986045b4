#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "binform/bigint.hpp"
#include "binform/rational.hpp"

namespace binform {

// The binary form a·X^d + b·Y^d with nonzero integer coefficients and d >= 3.
struct BinomialForm {
    Int a;
    Int b;
    unsigned d;

    BinomialForm(Int a_, Int b_, unsigned d_);

    bool positive_definite() const { return d % 2 == 0 && sgn(a) == sgn(b); }
};

Int eval_form(const BinomialForm& f, const Int& x, const Int& y);

using CoeffPair = std::pair<Int, Int>;
using CoeffSet = std::set<CoeffPair>;

// Finite collection of coefficient pairs per degree.  Insertion enforces
// the degree and nonzero-coefficient requirements; degrees with no surviving
// pairs are never stored.
class Family {
  public:
    Family() = default;

    void add(unsigned d, const Int& a, const Int& b);
    bool empty() const { return entries_.empty(); }
    const std::map<unsigned, CoeffSet>& entries() const { return entries_; }
    const CoeffSet* at(unsigned d) const;
    unsigned min_degree() const;

  private:
    std::map<unsigned, CoeffSet> entries_;
};

// Decide whether r equals (A/B)^d for a rational A/B, and produce the witness
// in lowest terms if so.  Requires r != 0 and d >= 1.  For even d the witness
// numerator is the nonnegative choice.
std::optional<Rational> dth_power_decompose(const Rational& r, unsigned d);

// Two forms of equal degree represent the same integers up to the obvious
// variable scalings exactly when either both a/a', b/b' or both a/b', b/a'
// are d-th powers of rationals; forms of different degree never qualify.
bool forms_isomorphic(const BinomialForm& f, const BinomialForm& g);

struct PairViolation {
    unsigned d;
    CoeffPair first;
    CoeffPair second;
    bool operator==(const PairViolation&) const = default;
};

struct FamilyDiagnostics {
    // Distinct pairs within one degree where both coefficient ratios of the
    // respective condition are d-th powers.
    std::vector<PairViolation> direct_violations;
    std::vector<PairViolation> crossed_violations;
    // Per degree: number of coefficient pairs and log(count + 1)/d (the
    // quantity that must stay small for the asymptotic count's error term
    // to remain lower order than the main term).
    struct CardinalityRow {
        unsigned d;
        std::size_t count;
        double log_ratio;
    };
    std::vector<CardinalityRow> cardinality_profile;
    struct MaxCoeffRow {
        unsigned d;
        Int max_abs;
    };
    std::vector<MaxCoeffRow> max_coeff_profile;

    bool clean() const { return direct_violations.empty() && crossed_violations.empty(); }
};

FamilyDiagnostics validate_family(const Family& fam);

// The local-solubility weight W attached to a form: for a/b not a d-th power
// it is 1 (odd d) or 1/4 (even d); for a/b = (A/B)^d it is 1 - 1/(2|AB|),
// again quartered when d is even.
Rational w_constant(const BinomialForm& f);

}  // namespace binform
