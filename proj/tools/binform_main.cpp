// Command-line driver: load a family and a run configuration, dispatch the
// requested operation, and print a deterministic CSV or JSON report on
// stdout.  Exit codes: 0 success, 1 usage or configuration error, 2 a
// numerical result could not be certified to the requested tolerance.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "binform/config.hpp"
#include "binform/constants.hpp"
#include "binform/enumeration.hpp"
#include "binform/family_io.hpp"
#include "binform/forms.hpp"
#include "binform/probes.hpp"
#include "binform/report.hpp"

namespace {

using namespace binform;

constexpr std::int64_t kDefaultWindowCap = 1000000000;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Int parse_big(const std::string& s, const char* what) {
    std::size_t digits = s.find_first_not_of("0123456789", s.starts_with("-") ? 1 : 0);
    if (s.empty() || s == "-" || digits != std::string::npos)
        throw std::invalid_argument(std::string(what) + ": \"" + s + "\" is not a decimal integer");
    return Int(s, 10);
}

struct ProbeOptions {
    std::string m;
    std::int64_t big_a = 2;
    std::int64_t a1 = 1;
    unsigned d0 = 0;
    unsigned d1 = 3;
    double kappa = 1.0;
    long trials = 10000;
    unsigned workers = 0;
    double theta_hint = 1.0;
    bool allow_large_n = false;
};

void check_window(std::int64_t n, bool allow_large) {
    if (n > kDefaultWindowCap && !allow_large)
        throw std::invalid_argument("window " + std::to_string(n) +
                                    " exceeds 1e9; pass --allow-large-n to proceed");
}

SearchPolicy make_policy(const RunConfig& cfg, const ProbeOptions& opt) {
    SearchPolicy policy;
    policy.x_cap = cfg.x_cap;
    policy.theta_hint = opt.theta_hint;
    return policy;
}

Table run_count(const ParsedRun& run, unsigned d_min, const ProbeOptions& opt) {
    Table t{{"N", "d", "count", "complete", "main_term"}, {}};
    for (std::int64_t n : run.config.n_values) {
        check_window(n, opt.allow_large_n);
        CountReport r = count_represented(run.family, d_min, n, run.config.x0,
                                          make_policy(run.config, opt), opt.workers);
        t.add_row({Int(r.n), Int(r.d), Int(r.count), r.complete, r.predicted_main_term});
    }
    return t;
}

Table run_represent(const ParsedRun& run, unsigned d_min, const ProbeOptions& opt) {
    if (opt.m.empty()) throw std::invalid_argument("represent requires --m");
    Int m = parse_big(opt.m, "--m");
    WitnessReport r = representations_of_m(run.family, d_min, m, run.config.x0,
                                           make_policy(run.config, opt));
    if (!r.complete)
        std::cerr << "note: no provable search cap for some configurations; "
                     "the witness list may be incomplete (raise --x-cap to widen)\n";
    Table t{{"d", "a", "b", "x", "y", "m"}, {}};
    for (const Representation& w : r.witnesses)
        t.add_row({Int(w.d), w.a, w.b, w.x, w.y, w.m});
    return t;
}

Table run_constants(const ParsedRun& run, unsigned d_min) {
    Table t{{"d", "a", "b", "theta", "two_over_ddagger", "w", "area", "area_error", "method",
             "density"},
            {}};
    for (const auto& [d, pairs] : run.family.entries()) {
        if (d < d_min) continue;
        double theta = theta_exponent(d);
        double tdd = two_over_ddagger(d_dagger(run.family, d));
        for (const auto& [a, b] : pairs) {
            BinomialForm f(a, b, d);
            AreaResult area = area_A_F(f, run.config.tolerance);
            Rational w = w_constant(f);
            const char* method =
                area.method == AreaMethod::closed_form_definite ? "closed-form" : "quadrature";
            t.add_row({Int(d), a, b, theta, tdd, w.str(), area.value, area.absolute_error_bound,
                       std::string(method), area.value * w.to_double()});
        }
    }
    return t;
}

Table run_isocheck(const ParsedRun& run, unsigned d_min) {
    FamilyDiagnostics diag = validate_family(run.family);
    Table t{{"d", "a", "b", "a2", "b2", "condition"}, {}};
    auto add = [&](const std::vector<PairViolation>& list, const char* kind) {
        for (const PairViolation& v : list) {
            if (v.d < d_min) continue;
            t.add_row({Int(v.d), v.first.first, v.first.second, v.second.first, v.second.second,
                       std::string(kind)});
        }
    };
    add(diag.direct_violations, "direct");
    add(diag.crossed_violations, "crossed");
    if (diag.clean())
        std::cerr << "note: all listed pairs are pairwise non-isomorphic\n";
    return t;
}

Table run_family_report(const ParsedRun& run, unsigned d_min) {
    FamilyDiagnostics diag = validate_family(run.family);
    Table t{{"d", "pairs", "max_coeff", "log_card_ratio"}, {}};
    for (std::size_t i = 0; i < diag.cardinality_profile.size(); ++i) {
        const auto& card = diag.cardinality_profile[i];
        if (card.d < d_min) continue;
        t.add_row({Int(card.d), Int(card.count), diag.max_coeff_profile[i].max_abs,
                   card.log_ratio});
    }
    return t;
}

Table run_abc_scan(const ParsedRun& run, unsigned d_min) {
    if (!run.config.x_cap) throw std::invalid_argument("abc-scan requires --x-cap as the search box");
    std::int64_t box = to_long(*run.config.x_cap);
    AbcScanReport r = abc_scan(run.family, d_min, box, run.config.epsilon);
    Table t{{"d", "a", "b", "x", "y", "m", "kappa"}, {}};
    for (const AbcRow& row : r.rows)
        t.add_row({Int(row.d), row.a, row.b, row.x, row.y, row.m, row.kappa});
    std::cerr << "note: maximum kappa over the box: " << r.max_kappa << "\n";
    return t;
}

// Draw a nonzero rational of height <= h and an exponent in [1, bmax].  The
// engine output is reduced by modulo so the stream depends only on the seed,
// not on any library's distribution implementation.
Rational random_rational(std::mt19937_64& rng, long h) {
    long num = 0;
    while (num == 0) num = static_cast<long>(rng() % (2 * h + 1)) - h;
    long den = static_cast<long>(rng() % h) + 1;
    return Rational(num, den);
}

Table run_baker(const ParsedRun& run, const ProbeOptions& opt) {
    if (opt.trials < 1) throw std::invalid_argument("baker-check requires --trials >= 1");
    std::mt19937_64 rng(run.config.seed);
    long violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    long done = 0;
    while (done < opt.trials) {
        BakerInput input{random_rational(rng, 1000000), random_rational(rng, 1000000),
                         static_cast<long>(rng() % 1000) + 1, static_cast<long>(rng() % 1000) + 1};
        try {
            BakerResult r = baker_check(input);
            if (!r.holds) ++violations;
            min_margin = std::min(min_margin, r.log_lhs - r.log_rhs);
            ++done;
        } catch (const hypothesis_error&) {
            // product landed exactly on 1; draw again
        }
    }
    Table t{{"trials", "seed", "violations", "all_hold", "min_margin"}, {}};
    t.add_row({Int(done), Int(run.config.seed), Int(violations), violations == 0, min_margin});
    return t;
}

Table run_regularity(const ParsedRun& run, unsigned d_min, const ProbeOptions& opt) {
    RegularityParams params;
    params.A = Int(opt.big_a);
    params.A1 = Int(opt.a1);
    params.d0 = opt.d0;
    params.d1 = opt.d1;
    params.kappa = opt.kappa;
    Table t{{"N", "count", "bound", "passes", "size_bound_violations", "complete"}, {}};
    for (std::int64_t n : run.config.n_values) {
        check_window(n, opt.allow_large_n);
        RegularityReport r = regularity_probe(run.family, params, run.config.epsilon, n, d_min);
        t.add_row({Int(n), Int(r.count), r.bound, r.passes,
                   Int(r.size_bound_violations.size()), r.complete});
    }
    return t;
}

Table run_fit(const ParsedRun& run, unsigned d_min, const ProbeOptions& opt) {
    std::vector<std::pair<std::int64_t, std::uint64_t>> counts;
    for (std::int64_t n : run.config.n_values) {
        check_window(n, opt.allow_large_n);
        CountReport r = count_represented(run.family, d_min, n, run.config.x0,
                                          make_policy(run.config, opt), opt.workers);
        counts.emplace_back(n, r.count);
    }
    FitReport fit = asymptotic_fit(run.family, d_min, counts, run.config.tolerance);
    Table t{{"N", "count", "main_term", "residual", "fitted_exponent", "theta",
             "two_over_ddagger"},
            {}};
    for (const FitPoint& p : fit.per_n)
        t.add_row({Int(p.n), Int(p.count), p.main_term, p.residual, fit.fitted_exponent,
                   fit.theta_reference, fit.two_over_ddagger});
    return t;
}

int run(int argc, char** argv) {
    CLI::App app{"Represented-integer enumeration and density constants for families of "
                 "binomial binary forms a*X^d + b*Y^d"};
    app.get_formatter()->column_width(30);

    std::string config_path, family_path, family_inline, command_name_opt, format_name_opt;
    std::vector<std::int64_t> n_values;
    std::int64_t d_min_opt = 0, x0_opt = 0, x_cap_opt = 0, seed_opt = -1;
    double tolerance_opt = -1.0, epsilon_opt = -1.0;
    ProbeOptions probe;

    app.add_option("--config", config_path, "run configuration document (JSON)");
    app.add_option("--family", family_path, "family document (JSON file)");
    app.add_option("--family-json", family_inline, "family document given inline");
    app.add_option("--command", command_name_opt,
                   "count | represent | constants | isocheck | family-report | abc-scan | "
                   "baker-check | regularity-probe | fit");
    app.add_option("--N", n_values, "window half-widths (repeatable)");
    app.add_option("--d-min", d_min_opt, "minimum degree (default: smallest in the family)");
    app.add_option("--x0", x0_opt, "witness size floor max(|x|,|y|) >= x0 (default 2)");
    app.add_option("--x-cap", x_cap_opt, "iterated-variable cap for unprovable regimes / scan box");
    app.add_option("--tolerance", tolerance_opt, "absolute tolerance for areas (default 1e-6)");
    app.add_option("--epsilon", epsilon_opt, "epsilon for the abc / regularity probes");
    app.add_option("--format", format_name_opt, "csv | json (default csv)");
    app.add_option("--seed", seed_opt, "seed for sampled probes (default 0)");
    app.add_option("--m", probe.m, "target integer for represent (decimal, any size)");
    app.add_option("--A", probe.big_a, "witness size floor for regularity-probe (default 2)");
    app.add_option("--A1", probe.a1, "secondary regularity parameter (default 1)");
    app.add_option("--d0", probe.d0, "degree shift in the size-bound exponent (default 0)");
    app.add_option("--d1", probe.d1, "first degree subject to the size bound (default 3)");
    app.add_option("--kappa", probe.kappa, "size-bound constant in (0, A) (default 1)");
    app.add_option("--trials", probe.trials, "sample count for baker-check (default 10000)");
    app.add_option("--workers", probe.workers, "worker threads for counting (default: all cores)");
    app.add_option("--theta-hint", probe.theta_hint, "degree-horizon exponent hint (default 1)");
    app.add_flag("--allow-large-n", probe.allow_large_n, "permit windows beyond 1e9");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    ParsedRun run;
    if (!config_path.empty()) run = parse_config_text(read_file(config_path));
    if (!family_path.empty()) run.family = parse_family_text(read_file(family_path));
    if (!family_inline.empty()) run.family = parse_family_text(family_inline);
    if (run.family.empty())
        throw std::invalid_argument("no family given (use --config, --family or --family-json)");

    if (!command_name_opt.empty()) run.config.command = command_from_name(command_name_opt);
    if (!n_values.empty()) run.config.n_values = n_values;
    if (d_min_opt) {
        if (d_min_opt < 3) throw std::invalid_argument("--d-min must be at least 3");
        run.config.d_min = static_cast<unsigned>(d_min_opt);
    }
    if (x0_opt) {
        if (x0_opt < 2) throw std::invalid_argument("--x0 must be at least 2");
        run.config.x0 = Int(x0_opt);
    }
    if (x_cap_opt) {
        if (x_cap_opt < 1) throw std::invalid_argument("--x-cap must be positive");
        run.config.x_cap = Int(x_cap_opt);
    }
    if (tolerance_opt >= 0.0) {
        if (!(tolerance_opt > 0.0)) throw std::invalid_argument("--tolerance must be positive");
        run.config.tolerance = tolerance_opt;
    }
    if (epsilon_opt >= 0.0) run.config.epsilon = epsilon_opt;
    if (!format_name_opt.empty()) run.config.format = format_from_name(format_name_opt);
    if (seed_opt >= 0) run.config.seed = static_cast<std::uint64_t>(seed_opt);

    unsigned d_min = validate_run(run);

    Table table;
    switch (run.config.command) {
        case Command::count: table = run_count(run, d_min, probe); break;
        case Command::represent: table = run_represent(run, d_min, probe); break;
        case Command::constants: table = run_constants(run, d_min); break;
        case Command::isocheck: table = run_isocheck(run, d_min); break;
        case Command::family_report: table = run_family_report(run, d_min); break;
        case Command::abc_scan: table = run_abc_scan(run, d_min); break;
        case Command::baker_check: table = run_baker(run, probe); break;
        case Command::regularity_probe: table = run_regularity(run, d_min, probe); break;
        case Command::fit: table = run_fit(run, d_min, probe); break;
    }
    std::cout << render_table(table, run.config.format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const binform::certification_failure& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
