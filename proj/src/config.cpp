#include "binform/config.hpp"

#include <stdexcept>

#include "json.hpp"

#include "binform/family_io.hpp"

namespace binform {

namespace {

struct CommandName {
    Command command;
    const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::count, "count"},
    {Command::represent, "represent"},
    {Command::constants, "constants"},
    {Command::isocheck, "isocheck"},
    {Command::family_report, "family-report"},
    {Command::abc_scan, "abc-scan"},
    {Command::baker_check, "baker-check"},
    {Command::regularity_probe, "regularity-probe"},
    {Command::fit, "fit"},
};

}  // namespace

Command command_from_name(const std::string& name) {
    for (const auto& c : kCommands)
        if (name == c.name) return c.command;
    throw std::invalid_argument("unknown command \"" + name + "\"");
}

const char* command_name(Command c) {
    for (const auto& e : kCommands)
        if (e.command == c) return e.name;
    return "?";
}

OutputFormat format_from_name(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown format \"" + name + "\" (expected csv or json)");
}

const char* format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

namespace {

std::int64_t require_positive_int(const nlohmann::json& v, const char* key) {
    if (!v.is_number_integer())
        throw std::invalid_argument(std::string("config key \"") + key + "\" must be an integer");
    std::int64_t n = v.get<std::int64_t>();
    if (n < 1)
        throw std::invalid_argument(std::string("config key \"") + key + "\" must be positive");
    return n;
}

}  // namespace

ParsedRun parse_config_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config: document must be an object");

    ParsedRun run;
    bool have_family = false;
    for (const auto& [key, value] : doc.items()) {
        if (key == "family") {
            run.family = parse_family(value);
            have_family = true;
        } else if (key == "command") {
            if (!value.is_string())
                throw std::invalid_argument("config key \"command\" must be a string");
            run.config.command = command_from_name(value.get<std::string>());
        } else if (key == "N") {
            if (!value.is_array())
                throw std::invalid_argument("config key \"N\" must be an array of integers");
            for (const auto& nv : value)
                run.config.n_values.push_back(require_positive_int(nv, "N"));
        } else if (key == "d_min") {
            std::int64_t d = require_positive_int(value, "d_min");
            if (d < 3) throw std::invalid_argument("config key \"d_min\" must be at least 3");
            run.config.d_min = static_cast<unsigned>(d);
        } else if (key == "x0") {
            std::int64_t v = require_positive_int(value, "x0");
            if (v < 2) throw std::invalid_argument("config key \"x0\" must be at least 2");
            run.config.x0 = Int(v);
        } else if (key == "x_cap") {
            run.config.x_cap = Int(require_positive_int(value, "x_cap"));
        } else if (key == "tolerance") {
            if (!value.is_number())
                throw std::invalid_argument("config key \"tolerance\" must be a number");
            run.config.tolerance = value.get<double>();
            if (!(run.config.tolerance > 0.0))
                throw std::invalid_argument("config key \"tolerance\" must be positive");
        } else if (key == "epsilon") {
            if (!value.is_number())
                throw std::invalid_argument("config key \"epsilon\" must be a number");
            run.config.epsilon = value.get<double>();
            if (run.config.epsilon < 0.0)
                throw std::invalid_argument("config key \"epsilon\" must be nonnegative");
        } else if (key == "format") {
            if (!value.is_string())
                throw std::invalid_argument("config key \"format\" must be a string");
            run.config.format = format_from_name(value.get<std::string>());
        } else if (key == "seed") {
            if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
                throw std::invalid_argument("config key \"seed\" must be a nonnegative integer");
            run.config.seed = value.get<std::uint64_t>();
        } else {
            throw std::invalid_argument("config: unknown key \"" + key + "\"");
        }
    }
    if (!have_family) throw std::invalid_argument("config: missing \"family\"");
    if (run.config.d_min == 0) run.config.d_min = run.family.min_degree();
    return run;
}

std::string emit_config(const ParsedRun& run) {
    nlohmann::ordered_json doc;
    doc["family"] = family_json(run.family);
    doc["command"] = command_name(run.config.command);
    if (!run.config.n_values.empty()) doc["N"] = run.config.n_values;
    if (run.config.d_min != 0) doc["d_min"] = run.config.d_min;
    doc["x0"] = to_long(run.config.x0);
    if (run.config.x_cap) doc["x_cap"] = to_long(*run.config.x_cap);
    doc["tolerance"] = run.config.tolerance;
    doc["epsilon"] = run.config.epsilon;
    doc["format"] = format_name(run.config.format);
    doc["seed"] = run.config.seed;
    return doc.dump(2) + "\n";
}

unsigned validate_run(const ParsedRun& run) {
    const RunConfig& c = run.config;
    unsigned d_min = c.d_min ? c.d_min : run.family.min_degree();
    switch (c.command) {
        case Command::count:
        case Command::fit:
            if (c.n_values.empty())
                throw std::invalid_argument(std::string(command_name(c.command)) +
                                            " requires a non-empty \"N\" list");
            break;
        case Command::constants:
            if (!(c.tolerance > 0.0))
                throw std::invalid_argument("constants requires a positive tolerance");
            break;
        case Command::regularity_probe:
            if (c.n_values.empty())
                throw std::invalid_argument("regularity-probe requires a non-empty \"N\" list");
            if (!(c.epsilon > 0.0))
                throw std::invalid_argument("regularity-probe requires a positive epsilon");
            break;
        case Command::abc_scan:
            if (!c.x_cap)
                throw std::invalid_argument("abc-scan requires \"x_cap\" as the search box");
            break;
        default:
            break;
    }
    return d_min;
}

}  // namespace binform
