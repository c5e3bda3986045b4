#include "binform/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "binform/constants.hpp"

namespace binform {

Representation::Representation(unsigned d_, Int a_, Int b_, Int x_, Int y_)
    : d(d_), a(std::move(a_)), b(std::move(b_)), x(std::move(x_)), y(std::move(y_)) {
    m = a * pow_int(x, d) + b * pow_int(y, d);
}

bool operator<(const Representation& p, const Representation& q) {
    if (p.d != q.d) return p.d < q.d;
    if (p.a != q.a) return p.a < q.a;
    if (p.b != q.b) return p.b < q.b;
    if (p.x != q.x) return p.x < q.x;
    return p.y < q.y;
}

namespace {

Int max_abs(const Int& u, const Int& v) {
    Int au = abs(u), av = abs(v);
    return au > av ? au : av;
}

// Inclusive y-intervals solving a x^d + b y^d in [m_lo, m_hi] for fixed x.
struct YRanges {
    int n = 0;
    Int lo[2], hi[2];
    void add(Int l, Int h) {
        if (l <= h) {
            lo[n] = std::move(l);
            hi[n] = std::move(h);
            ++n;
        }
    }
};

YRanges solve_ranges(const BinomialForm& f, const Int& axd, const Int& m_lo, const Int& m_hi) {
    // b * y^d must land in [m_lo - a x^d, m_hi - a x^d]; divide through by b
    // with the correct roundings (flipping the interval when b < 0).
    Int t_lo, t_hi;
    if (f.b > 0) {
        t_lo = cdiv(m_lo - axd, f.b);
        t_hi = fdiv(m_hi - axd, f.b);
    } else {
        t_lo = cdiv(m_hi - axd, f.b);
        t_hi = fdiv(m_lo - axd, f.b);
    }
    YRanges r;
    if (t_lo > t_hi) return r;
    if (f.d % 2 == 1) {
        r.add(ceil_root(t_lo, f.d), floor_root(t_hi, f.d));
        return r;
    }
    if (t_hi < 0) return r;
    if (t_lo < 0) t_lo = 0;
    Int u_lo = ceil_root(t_lo, f.d), u_hi = floor_root(t_hi, f.d);
    if (u_lo > u_hi) return r;
    if (u_lo == 0) {
        r.add(-u_hi, u_hi);
    } else {
        r.add(-u_hi, -u_lo);
        r.add(u_lo, u_hi);
    }
    return r;
}

// Per-form caps on the iterated variable.  A witness either has both terms
// of one sign — then |x| <= (M/|a|)^{1/d} — or the terms cancel.  In the
// cancelling case, writing |a| = t A^d, |b| = t B^d (possible exactly when
// |a/b| is a d-th power) turns the equation into t (U^d - V^d) = ±m with
// U = A|x|, V = B|y|, and |U - V| >= 1 forces max(U, V)^{d-1} <= M/t.
// Without the power structure there is no provable cap and the search falls
// back to max(x_cap, ceil(M^{1/(d-1)})), clearing `provable`.
struct Caps {
    Int vx, vy;
    bool provable = true;
    bool use_swap = false;    // heuristic regime: both orientations needed
    bool zero_locus = false;  // exact cancellation represents m = 0
};

Caps compute_caps(const BinomialForm& f, const Int& M, bool point_query, const Int& m,
                  const SearchPolicy& policy) {
    Caps c;
    Int aa = abs(f.a), bb = abs(f.b);
    c.vx = floor_root(fdiv(M, aa), f.d);
    c.vy = floor_root(fdiv(M, bb), f.d);

    bool opposite_possible = (f.d % 2 == 1) || (sgn(f.a) != sgn(f.b));
    if (!opposite_possible) return c;

    auto root = dth_power_decompose(Rational(aa, bb), f.d);
    if (root) {
        Int A = root->num(), B = root->den();
        Int t = fdiv(aa, pow_int(A, f.d));  // exact by construction
        c.zero_locus = true;
        bool cancelling_reachable = true;
        Int bound;
        if (point_query) {
            if (m % t != 0)
                cancelling_reachable = false;  // t divides every cancelling value
            else
                bound = fdiv(abs(m), t);
        } else {
            bound = fdiv(M, t);
        }
        if (cancelling_reachable) {
            Int R = floor_root(bound, f.d - 1);
            c.vx = std::max(c.vx, fdiv(R, A));
            c.vy = std::max(c.vy, fdiv(R, B));
        }
        return c;
    }

    c.provable = false;
    c.use_swap = true;
    Int heur = ceil_root(M, f.d - 1);
    if (policy.x_cap && *policy.x_cap > heur) heur = *policy.x_cap;
    c.vx = std::max(c.vx, heur);
    c.vy = std::max(c.vy, heur);
    return c;
}

// Visit solutions of f(x, y) in [m_lo, m_hi] for x in [x_from, x_to],
// filtered by max(|x|, |y|) >= x0.  `sink` receives arguments in the
// caller's (x, y) order via the `swapped` flag.
template <typename Sink>
void sweep(const BinomialForm& f, long x_from, long x_to, const Int& m_lo, const Int& m_hi,
           const Int& x0, bool swapped, Sink&& sink) {
    for (long xi = x_from; xi <= x_to; ++xi) {
        Int x(xi);
        Int axd = f.a * pow_int(x, f.d);
        YRanges r = solve_ranges(f, axd, m_lo, m_hi);
        for (int k = 0; k < r.n; ++k) {
            for (Int y = r.lo[k]; y <= r.hi[k]; ++y) {
                if (max_abs(x, y) < x0) continue;
                Int m = axd + f.b * pow_int(y, f.d);
                if (swapped)
                    sink(y, x, m);
                else
                    sink(x, y, m);
            }
        }
    }
}

long cap_to_long(const Int& v) {
    if (!fits_long(v))
        throw std::overflow_error("search cap exceeds native range: " + v.get_str());
    return to_long(v);
}

void check_window_args(const Int& x0, const SearchPolicy& policy) {
    if (x0 < 2) throw std::invalid_argument("x0 must be at least 2");
    if (!(policy.theta_hint > 0.0))
        throw std::invalid_argument("SearchPolicy: theta_hint must be positive");
    if (policy.x_cap && *policy.x_cap < 0)
        throw std::invalid_argument("SearchPolicy: x_cap must be nonnegative");
}

}  // namespace

std::vector<Int> solve_second_variable(const BinomialForm& f, const Int& x, const Int& m_lo,
                                       const Int& m_hi) {
    if (m_lo > m_hi) throw std::invalid_argument("solve_second_variable: empty target interval");
    Int axd = f.a * pow_int(x, f.d);
    YRanges r = solve_ranges(f, axd, m_lo, m_hi);
    std::vector<Int> ys;
    for (int k = 0; k < r.n; ++k)
        for (Int y = r.lo[k]; y <= r.hi[k]; ++y) ys.push_back(y);
    std::sort(ys.begin(), ys.end());
    return ys;
}

WitnessReport representations_of_m(const Family& fam, unsigned d, const Int& m, const Int& x0,
                                   const SearchPolicy& policy) {
    if (m >= -1 && m <= 1)
        throw possibly_infinite_error("representations_of_m: |m| <= 1 may have infinitely many witnesses");
    check_window_args(x0, policy);

    std::set<Representation> out;
    bool complete = true;
    Int M = abs(m);
    for (const auto& [deg, pairs] : fam.entries()) {
        if (deg < d) continue;
        for (const auto& [a, b] : pairs) {
            BinomialForm f(a, b, deg);
            Caps caps = compute_caps(f, M, true, m, policy);
            complete = complete && caps.provable;
            auto collect = [&](const Int& x, const Int& y, const Int&) {
                out.insert(Representation(deg, a, b, x, y));
            };
            long vx = cap_to_long(caps.vx);
            sweep(f, -vx, vx, m, m, x0, false, collect);
            if (caps.use_swap) {
                BinomialForm g(b, a, deg);
                long vy = cap_to_long(caps.vy);
                sweep(g, -vy, vy, m, m, x0, true, collect);
            }
        }
    }
    return {std::vector<Representation>(out.begin(), out.end()), complete};
}

RepresentedSet::RepresentedSet(std::int64_t n) : n_(n) {
    if (n < 1) throw std::invalid_argument("RepresentedSet: window must be positive");
    if (n > (std::int64_t{1} << 45))
        throw std::invalid_argument("RepresentedSet: window too large to materialize");
    words_ = static_cast<std::size_t>((2 * n + 1 + 63) / 64);
    bits_ = std::make_unique<std::atomic<std::uint64_t>[]>(words_);
    for (std::size_t i = 0; i < words_; ++i) bits_[i].store(0, std::memory_order_relaxed);
}

void RepresentedSet::mark(std::int64_t m) {
    std::uint64_t idx = static_cast<std::uint64_t>(m + n_);
    bits_[idx >> 6].fetch_or(std::uint64_t{1} << (idx & 63), std::memory_order_relaxed);
}

bool RepresentedSet::contains(std::int64_t m) const {
    if (m < -n_ || m > n_) return false;
    std::uint64_t idx = static_cast<std::uint64_t>(m + n_);
    return (bits_[idx >> 6].load(std::memory_order_relaxed) >> (idx & 63)) & 1;
}

std::uint64_t RepresentedSet::count() const {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < words_; ++i)
        total += static_cast<std::uint64_t>(
            __builtin_popcountll(bits_[i].load(std::memory_order_relaxed)));
    return total;
}

std::vector<std::int64_t> RepresentedSet::values() const {
    std::vector<std::int64_t> vals;
    for (std::size_t i = 0; i < words_; ++i) {
        std::uint64_t w = bits_[i].load(std::memory_order_relaxed);
        while (w) {
            unsigned bit = static_cast<unsigned>(__builtin_ctzll(w));
            vals.push_back(static_cast<std::int64_t>(i * 64 + bit) - n_);
            w &= w - 1;
        }
    }
    return vals;
}

namespace {

struct SweepTask {
    BinomialForm f;
    long x_from, x_to;
    bool swapped;
};

// Split [-v, v] into chunks so large single-form sweeps can spread over the
// worker pool; small ranges stay as one task.
void push_chunks(std::vector<SweepTask>& tasks, const BinomialForm& f, long v, bool swapped) {
    constexpr long kChunk = 1 << 14;
    for (long lo = -v; lo <= v; lo += kChunk) {
        long hi = std::min(v, lo + kChunk - 1);
        tasks.push_back({f, lo, hi, swapped});
    }
}

double predicted_main_term(const Family& fam, unsigned d, std::int64_t n) {
    const CoeffSet* pairs = fam.at(d);
    if (!pairs) return 0.0;
    // Area scales as |ab|^{-1/d} once coefficients are reduced to signs, so
    // one canonical area per sign shape covers the whole degree.
    double definite_area = 0.0, indefinite_area = 0.0;
    double sum = 0.0;
    for (const auto& [a, b] : *pairs) {
        BinomialForm f(a, b, d);
        double& canonical = f.positive_definite() ? definite_area : indefinite_area;
        if (canonical == 0.0) {
            Int sa(sgn(a)), sb(sgn(b));
            canonical = area_A_F(BinomialForm(sa, sb, d), 1e-8).value;
        }
        double scale = std::exp(-log_abs(a * b) / static_cast<double>(d));
        sum += canonical * scale * w_constant(f).to_double();
    }
    return sum * std::pow(static_cast<double>(n), 2.0 / static_cast<double>(d));
}

}  // namespace

CountReport count_represented(const Family& fam, unsigned d, std::int64_t n, const Int& x0,
                              const SearchPolicy& policy, unsigned workers) {
    if (n < 1) throw std::invalid_argument("count_represented: window must be positive");
    check_window_args(x0, policy);

    RepresentedSet set(n);
    Int m_lo(-n), m_hi(n);
    bool complete = true;
    std::vector<SweepTask> tasks;
    for (const auto& [deg, pairs] : fam.entries()) {
        if (deg < d) continue;
        for (const auto& [a, b] : pairs) {
            BinomialForm f(a, b, deg);
            Caps caps = compute_caps(f, Int(n), false, Int(0), policy);
            complete = complete && caps.provable;
            // Exact cancellation marks 0 at arbitrarily large scale, so it is
            // handled analytically rather than through the capped sweep.
            if (caps.zero_locus) set.mark(0);
            push_chunks(tasks, f, cap_to_long(caps.vx), false);
            if (caps.use_swap) push_chunks(tasks, BinomialForm(b, a, deg), cap_to_long(caps.vy), true);
        }
    }

    auto run_task = [&](const SweepTask& t) {
        sweep(t.f, t.x_from, t.x_to, m_lo, m_hi, x0, t.swapped,
              [&](const Int&, const Int&, const Int& m) { set.mark(to_long(m)); });
    };

    unsigned pool = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
    pool = std::min<std::size_t>(pool, tasks.size());
    if (pool <= 1) {
        for (const auto& t : tasks) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> threads;
        threads.reserve(pool);
        for (unsigned i = 0; i < pool; ++i) {
            threads.emplace_back([&] {
                for (std::size_t k = next.fetch_add(1); k < tasks.size(); k = next.fetch_add(1))
                    run_task(tasks[k]);
            });
        }
        for (auto& th : threads) th.join();
    }

    std::uint64_t count = set.count();
    double main_term = predicted_main_term(fam, d, n);
    return {n, d, count, complete, main_term, std::move(set)};
}

bool visit_window_witnesses(const Family& fam, unsigned d, std::int64_t n, const Int& x0,
                            const SearchPolicy& policy,
                            const std::function<void(const Representation&)>& sink) {
    if (n < 1) throw std::invalid_argument("visit_window_witnesses: window must be positive");
    check_window_args(x0, policy);
    std::set<Representation> seen;
    bool complete = true;
    Int m_lo(-n), m_hi(n);
    for (const auto& [deg, pairs] : fam.entries()) {
        if (deg < d) continue;
        for (const auto& [a, b] : pairs) {
            BinomialForm f(a, b, deg);
            Caps caps = compute_caps(f, Int(n), false, Int(0), policy);
            complete = complete && caps.provable;
            auto emit = [&](const Int& x, const Int& y, const Int&) {
                Representation rep(deg, a, b, x, y);
                if (seen.insert(rep).second) sink(rep);
            };
            long vx = cap_to_long(caps.vx);
            sweep(f, -vx, vx, m_lo, m_hi, x0, false, emit);
            if (caps.use_swap) {
                BinomialForm g(b, a, deg);
                long vy = cap_to_long(caps.vy);
                sweep(g, -vy, vy, m_lo, m_hi, x0, true, emit);
            }
        }
    }
    return complete;
}

WitnessReport brute_force_witnesses(const Family& fam, unsigned d, std::int64_t box, const Int& m,
                                    const Int& x0) {
    if (box < 2) throw std::invalid_argument("brute_force: box must be at least 2");
    std::vector<Representation> out;
    for (const auto& [deg, pairs] : fam.entries()) {
        if (deg < d) continue;
        for (const auto& [a, b] : pairs) {
            BinomialForm f(a, b, deg);
            for (std::int64_t xi = -box; xi <= box; ++xi) {
                Int x(xi);
                Int axd = f.a * pow_int(x, deg);
                for (std::int64_t yi = -box; yi <= box; ++yi) {
                    Int y(yi);
                    if (max_abs(x, y) < x0) continue;
                    if (axd + f.b * pow_int(y, deg) == m)
                        out.push_back(Representation(deg, a, b, x, y));
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return {std::move(out), true};
}

std::vector<std::int64_t> brute_force_window(const Family& fam, unsigned d, std::int64_t box,
                                             std::int64_t n, const Int& x0) {
    if (box < 2) throw std::invalid_argument("brute_force: box must be at least 2");
    if (n < 1) throw std::invalid_argument("brute_force: window must be positive");
    std::set<std::int64_t> vals;
    Int lo(-n), hi(n);
    for (const auto& [deg, pairs] : fam.entries()) {
        if (deg < d) continue;
        for (const auto& [a, b] : pairs) {
            BinomialForm f(a, b, deg);
            for (std::int64_t xi = -box; xi <= box; ++xi) {
                Int x(xi);
                Int axd = f.a * pow_int(x, deg);
                for (std::int64_t yi = -box; yi <= box; ++yi) {
                    Int y(yi);
                    if (max_abs(x, y) < x0) continue;
                    Int m = axd + f.b * pow_int(y, deg);
                    if (m >= lo && m <= hi) vals.insert(to_long(m));
                }
            }
        }
    }
    return std::vector<std::int64_t>(vals.begin(), vals.end());
}

double count_upper_bound(const Family& fam, unsigned d, double n, double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("count_upper_bound: theta must be positive");
    if (!(n >= 1.0)) throw std::invalid_argument("count_upper_bound: N must be at least 1");
    double horizon = std::floor(theta * std::log(n) / M_LN2);
    double card = 0.0;
    for (const auto& [deg, pairs] : fam.entries())
        if (deg >= d && static_cast<double>(deg) <= horizon)
            card += static_cast<double>(pairs.size());
    return 4.0 * std::pow(n, 2.0 * theta / static_cast<double>(d)) * card;
}

}  // namespace binform
