#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "binform/forms.hpp"

namespace binform {

// Witness tuple: a_x^d + b_y^d evaluates to m.  The value is recomputed from
// the components on construction, so an emitted witness is always valid.
struct Representation {
    unsigned d;
    Int a, b, x, y, m;

    Representation(unsigned d_, Int a_, Int b_, Int x_, Int y_);

    friend bool operator==(const Representation& p, const Representation& q) {
        return p.d == q.d && p.a == q.a && p.b == q.b && p.x == q.x && p.y == q.y;
    }
    friend bool operator<(const Representation& p, const Representation& q);
};

// x_cap floors the iterated-variable cap in the regime with no provable
// bound; theta_hint is the exponent callers may use for degree-horizon
// reasoning (the search itself visits every listed degree, which subsumes
// any horizon).
struct SearchPolicy {
    std::optional<Int> x_cap;
    double theta_hint = 1.0;
};

// Raised for m in {-1, 0, 1}, whose witness sets can be infinite.
struct possibly_infinite_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct WitnessReport {
    std::vector<Representation> witnesses;  // sorted by (d, a, b, x, y)
    bool complete;                          // every regime had a provable cap
};

// All integers y with a x^d + b y^d in [m_lo, m_hi], in increasing order.
std::vector<Int> solve_second_variable(const BinomialForm& f, const Int& x, const Int& m_lo,
                                       const Int& m_hi);

// Every witness of m across listed degrees >= d with max(|x|,|y|) >= x0.
// Same-sign configurations are bounded by (|m|/coeff)^{1/d'}; cancelling
// configurations are bounded through the factorization of u^{d'} - v^{d'}
// when |a/b| is a d'-th power, and otherwise heuristically capped (clearing
// `complete`).  Requires |m| >= 2 and x0 >= 2.
WitnessReport representations_of_m(const Family& fam, unsigned d, const Int& m,
                                   const Int& x0 = Int(2), const SearchPolicy& policy = {});

// Membership bitset over the window [-n, n]; marking is atomic so chunked
// writers can share it, and the result is independent of write order.
class RepresentedSet {
  public:
    explicit RepresentedSet(std::int64_t n);

    std::int64_t window() const { return n_; }
    void mark(std::int64_t m);
    bool contains(std::int64_t m) const;
    std::uint64_t count() const;
    std::vector<std::int64_t> values() const;

  private:
    std::int64_t n_;
    std::size_t words_;
    std::unique_ptr<std::atomic<std::uint64_t>[]> bits_;
};

struct CountReport {
    std::int64_t n;
    unsigned d;
    std::uint64_t count;
    bool complete;
    double predicted_main_term;  // sum of per-form density constants times n^{2/d}
    RepresentedSet represented;
};

// Distinct represented integers in [-n, n] (witness constraints as above).
// The iterated-variable range is processed in chunks across `workers`
// threads (0 = hardware default); the marked set is a union, so the result
// does not depend on the worker count.
CountReport count_represented(const Family& fam, unsigned d, std::int64_t n,
                              const Int& x0 = Int(2), const SearchPolicy& policy = {},
                              unsigned workers = 0);

// Single-threaded visitation of every window witness (used by probes that
// need the tuples, not just membership).  Returns the completeness flag.
bool visit_window_witnesses(const Family& fam, unsigned d, std::int64_t n, const Int& x0,
                            const SearchPolicy& policy,
                            const std::function<void(const Representation&)>& sink);

// Definitionally exhaustive double loop over |x|, |y| <= box (box >= 2).
WitnessReport brute_force_witnesses(const Family& fam, unsigned d, std::int64_t box, const Int& m,
                                    const Int& x0 = Int(2));
std::vector<std::int64_t> brute_force_window(const Family& fam, unsigned d, std::int64_t box,
                                             std::int64_t n, const Int& x0 = Int(2));

// Explicit counting bound 4 * N^{2 theta / d} * (number of listed pairs in
// degrees d <= d' <= floor(theta * log N / log 2)).
double count_upper_bound(const Family& fam, unsigned d, double n, double theta);

}  // namespace binform
