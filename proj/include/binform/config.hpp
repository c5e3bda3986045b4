#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binform/forms.hpp"
#include "binform/report.hpp"

namespace binform {

enum class Command {
    count,
    represent,
    constants,
    isocheck,
    family_report,
    abc_scan,
    baker_check,
    regularity_probe,
    fit,
};

Command command_from_name(const std::string& name);
const char* command_name(Command c);

OutputFormat format_from_name(const std::string& name);
const char* format_name(OutputFormat f);

struct RunConfig {
    Command command = Command::count;
    std::vector<std::int64_t> n_values;
    unsigned d_min = 0;  // 0: resolved to the smallest family degree
    Int x0 = Int(2);
    std::optional<Int> x_cap;
    double tolerance = 1e-6;
    double epsilon = 0.0;
    OutputFormat format = OutputFormat::csv;
    std::uint64_t seed = 0;
};

struct ParsedRun {
    RunConfig config;
    Family family;
};

// Parse a run document: {"family": {...}, "command": "...", "N": [...],
// "d_min": ..., "x0": ..., "x_cap": ..., "tolerance": ..., "epsilon": ...,
// "format": "csv"|"json", "seed": ...}.  Unknown keys are rejected; d_min
// defaults to the smallest family degree.
ParsedRun parse_config_text(const std::string& text);

// Inverse of parse_config_text for valid runs (round-trip identity).
std::string emit_config(const ParsedRun& run);

// Enforce the per-command requirements (window list present for count/fit,
// positive tolerance for constants, positive epsilon for the regularity
// probe).  Returns the resolved d_min.
unsigned validate_run(const ParsedRun& run);

}  // namespace binform
