#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <string>

#include "json.hpp"

#include "binform/config.hpp"
#include "binform/constants.hpp"
#include "binform/family_io.hpp"
#include "binform/report.hpp"

using namespace binform;

namespace {

bool throws_with(const std::function<void()>& op, const std::string& needle) {
    try {
        op();
    } catch (const std::invalid_argument& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("cell rendering") {
    CHECK(render_cell(Cell(Int(0))) == "0");
    CHECK(render_cell(Cell(pow_int(Int(10), 25))) == "10000000000000000000000000");
    CHECK(render_cell(Cell(Int(-42))) == "-42");
    CHECK(render_cell(Cell(0.5)) == "0.5");
    CHECK(render_cell(Cell(true)) == "true");
    CHECK(render_cell(Cell(false)) == "false");
    CHECK(render_cell(Cell(std::string("abc"))) == "abc");
    CHECK(render_cell(Cell(std::numeric_limits<double>::quiet_NaN())) == "nan");
    CHECK(render_cell(Cell(std::numeric_limits<double>::infinity())) == "inf");
    CHECK(render_cell(Cell(-std::numeric_limits<double>::infinity())) == "-inf");
    // Twelve significant digits.
    CHECK(render_cell(Cell(4.635186693253429)) == "4.63518669325");
}

TEST_CASE("csv rendering") {
    Table t;
    t.columns = {"d", "value", "note"};
    t.add_row({Cell(Int(3)), Cell(1.5), Cell(std::string("plain"))});
    t.add_row({Cell(Int(4)), Cell(2.0), Cell(std::string("has,comma"))});
    t.add_row({Cell(Int(5)), Cell(true), Cell(std::string("say \"hi\""))});
    std::string csv = to_csv(t);
    CHECK(csv ==
          "d,value,note\n"
          "3,1.5,plain\n"
          "4,2,\"has,comma\"\n"
          "5,true,\"say \"\"hi\"\"\"\n");

    Table empty;
    empty.columns = {"a", "b"};
    CHECK(to_csv(empty) == "a,b\n");

    CHECK(to_csv(t) == csv);  // rendering is deterministic

    Table bad;
    bad.columns = {"a", "b"};
    CHECK_THROWS_AS(bad.add_row({Cell(Int(1))}), std::invalid_argument);
}

TEST_CASE("json rendering") {
    Table t;
    t.columns = {"d", "value", "flag", "name"};
    t.add_row({Cell(Int(3)), Cell(0.25), Cell(true), Cell(std::string("x\ny"))});
    t.add_row({Cell(pow_int(Int(2), 70)), Cell(std::numeric_limits<double>::quiet_NaN()),
               Cell(false), Cell(std::string("q\"z"))});
    std::string js = to_json(t);
    auto doc = nlohmann::json::parse(js);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 2);
    CHECK(doc[0]["d"] == 3);
    CHECK(doc[0]["value"] == 0.25);
    CHECK(doc[0]["flag"] == true);
    CHECK(doc[0]["name"] == "x\ny");
    CHECK(doc[1]["value"].is_null());  // non-finite reals have no JSON number
    CHECK(doc[1]["flag"] == false);
    CHECK(doc[1]["name"] == "q\"z");
    // Oversized integers survive exactly, in some exact JSON encoding.
    Int big = pow_int(Int(2), 70);
    if (doc[1]["d"].is_string())
        CHECK(doc[1]["d"] == big.get_str());
    else
        CHECK(doc[1]["d"].dump() == big.get_str());

    Table empty;
    empty.columns = {"a"};
    CHECK(to_json(empty) == "[]\n");
    CHECK(to_json(t) == js);

    CHECK(render_table(t, OutputFormat::json) == js);
    CHECK(render_table(t, OutputFormat::csv) == to_csv(t));
}

TEST_CASE("growth-exponent fit") {
    Family fam;
    fam.add(4, Int(1), Int(1));
    auto fit = asymptotic_fit(fam, 4, {{10000, 100}, {100, 10}}, 1e-8);
    CHECK(fit.fitted_exponent == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(fit.theta_reference == theta_exponent(4));
    CHECK(fit.two_over_ddagger == 0.0);
    REQUIRE(fit.per_n.size() == 2);
    CHECK(fit.per_n[0].n == 100);  // sorted ascending
    CHECK(fit.per_n[1].n == 10000);
    CHECK(fit.per_n[0].main_term == doctest::Approx(4.635186693).epsilon(1e-6));
    CHECK(fit.per_n[0].residual ==
          doctest::Approx(10 - fit.per_n[0].main_term).epsilon(1e-12));

    // Perfect power law across three windows.
    auto exact = asymptotic_fit(fam, 4, {{10, 8}, {1000, 80}, {100000, 800}}, 1e-8);
    CHECK(exact.fitted_exponent == doctest::Approx(0.5).epsilon(1e-12));

    // Zero-count windows are reported but excluded from the slope.
    auto partial = asymptotic_fit(fam, 4, {{100, 0}, {1000, 10}, {100000, 1000}}, 1e-8);
    CHECK(partial.per_n.size() == 3);
    CHECK(partial.fitted_exponent == doctest::Approx(1.0).epsilon(1e-12));

    Family staged;
    staged.add(4, Int(1), Int(1));
    staged.add(6, Int(1), Int(1));
    auto with_next = asymptotic_fit(staged, 4, {{100, 10}, {10000, 100}}, 1e-8);
    CHECK(with_next.two_over_ddagger == doctest::Approx(2.0 / 6).epsilon(1e-15));

    CHECK(throws_with([&] { asymptotic_fit(fam, 4, {{100, 10}}, 1e-8); },
                      "two distinct window sizes"));
    CHECK(throws_with([&] { asymptotic_fit(fam, 4, {{100, 10}, {100, 12}}, 1e-8); },
                      "two distinct window sizes"));
    CHECK(throws_with([&] { asymptotic_fit(fam, 4, {{100, 0}, {1000, 0}}, 1e-8); },
                      "all counts are zero"));
    CHECK(throws_with([&] { asymptotic_fit(fam, 4, {{100, 0}, {1000, 5}}, 1e-8); },
                      "two windows with positive counts"));
    CHECK(throws_with([&] { asymptotic_fit(fam, 4, {{0, 1}, {10, 2}}, 1e-8); }, "positive"));
}

TEST_CASE("family parsing fixtures") {
    Family fam = parse_family_text(R"({"3": [[1, 1], [2, -3]], "4": [[1, 1]]})");
    CHECK(fam.entries().size() == 2);
    REQUIRE(fam.at(3) != nullptr);
    CHECK(fam.at(3)->size() == 2);
    CHECK(fam.at(3)->count({Int(2), Int(-3)}) == 1);

    // Duplicates collapse.
    CHECK(parse_family_text(R"({"3": [[1, 1], [1, 1]]})").at(3)->size() == 1);

    // Decimal strings carry coefficients beyond native range.
    Family big = parse_family_text(R"({"5": [["900000000000000000000", "-1"]]})");
    REQUIRE(big.at(5) != nullptr);
    Int expect("900000000000000000000");
    CHECK(big.at(5)->begin()->first == expect);
    CHECK(big.at(5)->begin()->second == -1);

    Family negstr = parse_family_text(R"({"3": [["-42", "7"]]})");
    CHECK(negstr.at(3)->begin()->first == -42);
}

TEST_CASE("family parsing rejections") {
    CHECK(throws_with([] { parse_family_text(R"([1, 2])"); }, "object"));
    CHECK(throws_with([] { parse_family_text(R"({"2": [[1, 1]]})"); }, "below 3"));
    CHECK(throws_with([] { parse_family_text(R"({"abc": [[1, 1]]})"); }, "not a decimal"));
    CHECK(throws_with([] { parse_family_text(R"({"3x": [[1, 1]]})"); }, "not a decimal"));
    CHECK(throws_with([] { parse_family_text(R"({"": [[1, 1]]})"); }, "not a decimal"));
    CHECK(throws_with([] { parse_family_text(R"({"9000000": [[1, 1]]})"); }, "out of range"));
    CHECK(throws_with([] { parse_family_text(R"({"3": [[0, 1]]})"); }, "zero coefficient"));
    CHECK(throws_with([] { parse_family_text(R"({"3": [[0, 1]]})"); }, "3[0]"));
    CHECK(throws_with([] { parse_family_text(R"({"3": [[1.5, 1]]})"); }, "integer"));
    CHECK(throws_with([] { parse_family_text(R"({"3": [[2.0, 1]]})"); }, "integer"));
    CHECK(throws_with([] { parse_family_text(R"({"3": [[true, 1]]})"); }, "integer"));
    CHECK(throws_with([] { parse_family_text(R"({"3": [["1 2", 1]]})"); }, "integer"));
    CHECK(throws_with([] { parse_family_text(R"({"3": [["12x", 1]]})"); }, "integer"));
    CHECK(throws_with([] { parse_family_text(R"({"3": [[1, 1, 1]]})"); }, "pair"));
    CHECK(throws_with([] { parse_family_text(R"({"3": [5]})"); }, "pair"));
    CHECK(throws_with([] { parse_family_text(R"({"3": 7})"); }, "array of pairs"));
    CHECK(throws_with([] { parse_family_text(R"({})"); }, "no coefficient pairs"));
    CHECK(throws_with([] { parse_family_text("{nope"); }, "malformed"));
}

TEST_CASE("family serialization round trip") {
    Family fam;
    fam.add(3, Int(1), Int(-1));
    fam.add(3, Int(2), Int(3));
    fam.add(5, pow_int(Int(10), 30), Int(-7));
    auto doc = family_json(fam);
    // Degrees ascending, big values as strings, native ones as numbers.
    auto it = doc.begin();
    CHECK(it.key() == "3");
    CHECK((*doc.find("3"))[0][0].is_number_integer());
    CHECK((*doc.find("5"))[0][0].is_string());
    CHECK((*doc.find("5"))[0][0] == pow_int(Int(10), 30).get_str());

    Family back = parse_family(doc);
    CHECK(back.entries() == fam.entries());
}

TEST_CASE("run configuration parsing and round trip") {
    std::string minimal = R"({"family": {"3": [[1, 1]]}, "command": "count", "N": [100]})";
    ParsedRun run = parse_config_text(minimal);
    CHECK(run.config.command == Command::count);
    CHECK(run.config.n_values == std::vector<std::int64_t>{100});
    CHECK(run.config.d_min == 3);  // unset degree floor resolves to the family minimum
    CHECK(run.config.x0 == 2);
    CHECK_FALSE(run.config.x_cap.has_value());
    CHECK(run.config.tolerance == 1e-6);
    CHECK(run.config.epsilon == 0.0);
    CHECK(run.config.format == OutputFormat::csv);
    CHECK(run.config.seed == 0);
    CHECK(validate_run(run) == 3);

    std::string full = R"({
        "family": {"4": [[1, 1], [2, 3]], "6": [[1, -1]]},
        "command": "fit",
        "N": [1000, 100, 10000],
        "d_min": 4,
        "x0": 3,
        "x_cap": 50,
        "tolerance": 1e-7,
        "epsilon": 0.25,
        "format": "json",
        "seed": 42
    })";
    ParsedRun rich = parse_config_text(full);
    CHECK(rich.config.command == Command::fit);
    CHECK(rich.config.x_cap == Int(50));
    CHECK(rich.config.format == OutputFormat::json);
    CHECK(validate_run(rich) == 4);

    // parse -> emit -> parse -> emit is a fixed point.
    std::string emitted = emit_config(rich);
    CHECK(emit_config(parse_config_text(emitted)) == emitted);
    std::string emitted_min = emit_config(run);
    CHECK(emit_config(parse_config_text(emitted_min)) == emitted_min);
}

TEST_CASE("run configuration rejections") {
    auto with_family = [](const std::string& body) {
        return std::string(R"({"family": {"3": [[1, 1]]}, )") + body + "}";
    };
    CHECK(throws_with([&] { parse_config_text(with_family(R"("box": 4)")); }, "unknown key"));
    CHECK(throws_with([&] { parse_config_text(R"({"command": "count"})"); }, "missing \"family\""));
    CHECK(throws_with([&] { parse_config_text(with_family(R"("command": "dance")")); },
                      "unknown command"));
    CHECK(throws_with([&] { parse_config_text(with_family(R"("N": 100)")); }, "array"));
    CHECK(throws_with([&] { parse_config_text(with_family(R"("N": [0])")); }, "positive"));
    CHECK(throws_with([&] { parse_config_text(with_family(R"("d_min": 2)")); }, "at least 3"));
    CHECK(throws_with([&] { parse_config_text(with_family(R"("x0": 1)")); }, "at least 2"));
    CHECK(throws_with([&] { parse_config_text(with_family(R"("tolerance": 0)")); }, "positive"));
    CHECK(throws_with([&] { parse_config_text(with_family(R"("tolerance": "big")")); }, "number"));
    CHECK(throws_with([&] { parse_config_text(with_family(R"("epsilon": -1)")); }, "nonnegative"));
    CHECK(throws_with([&] { parse_config_text(with_family(R"("format": "xml")")); },
                      "unknown format"));
    CHECK(throws_with([&] { parse_config_text(with_family(R"("seed": -4)")); }, "nonnegative"));
    CHECK(throws_with([&] { parse_config_text("[]"); }, "object"));
    CHECK(throws_with([&] { parse_config_text("{oops"); }, "malformed"));
}

TEST_CASE("per-command requirements") {
    auto parsed = [](const std::string& text) { return parse_config_text(text); };
    CHECK_THROWS_AS(
        validate_run(parsed(R"({"family": {"3": [[1, 1]]}, "command": "count"})")),
        std::invalid_argument);
    CHECK_THROWS_AS(validate_run(parsed(R"({"family": {"3": [[1, 1]]}, "command": "fit"})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        validate_run(parsed(
            R"({"family": {"3": [[1, 1]]}, "command": "regularity-probe", "N": [100]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        validate_run(parsed(R"({"family": {"3": [[1, 1]]}, "command": "abc-scan"})")),
        std::invalid_argument);
    CHECK(validate_run(parsed(
              R"({"family": {"3": [[1, 1]]}, "command": "abc-scan", "x_cap": 10})")) == 3);
    CHECK(validate_run(parsed(
              R"({"family": {"3": [[1, 1]]}, "command": "represent", "d_min": 5})")) == 5);

    for (Command c : {Command::count, Command::represent, Command::constants, Command::isocheck,
                      Command::family_report, Command::abc_scan, Command::baker_check,
                      Command::regularity_probe, Command::fit})
        CHECK(command_from_name(command_name(c)) == c);
    for (OutputFormat f : {OutputFormat::csv, OutputFormat::json})
        CHECK(format_from_name(format_name(f)) == f);
}
