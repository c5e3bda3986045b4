#pragma once

#include <compare>
#include <stdexcept>
#include <string>

#include "binform/bigint.hpp"

namespace binform {

// Exact rational in lowest terms with positive denominator.  All arithmetic
// stays canonical; heights are those of the reduced representation.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(const Int& num, const Int& den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const Int& num) : v_(num) {}
    Rational(long num, long den = 1) : Rational(Int(num), Int(den)) {}

    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    int sign() const { return sgn(v_); }

    // Height H(p/q) = max(|p|, q); the logarithmic (Weil) height is its log.
    Int height() const {
        Int p = abs(v_.get_num());
        Int q = v_.get_den();
        return p > q ? p : q;
    }
    double log_height() const { return log_abs(height()); }

    // Exact integer power, negative exponents allowed for nonzero values.
    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (is_zero() && e < 0) throw std::domain_error("Rational::pow: zero base, negative exponent");
        unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
        Int pn = pow_int(v_.get_num(), ae);
        Int pd = pow_int(v_.get_den(), ae);
        return e > 0 ? Rational(pn, pd) : Rational(pd, pn);
    }

    Rational reciprocal() const {
        if (is_zero()) throw std::domain_error("Rational::reciprocal: zero");
        return Rational(v_.get_den(), v_.get_num());
    }

    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }

    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.v_ / b.v_);
    }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }

  private:
    explicit Rational(const mpq_class& q) : v_(q) {}  // assumed canonical
    mpq_class v_;
};

}  // namespace binform
