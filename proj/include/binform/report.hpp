#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "binform/forms.hpp"

namespace binform {

enum class OutputFormat { csv, json };

// One report value.  Reals are rendered with 12 significant digits, integers
// in full decimal, booleans as true/false — identical in both formats, so
// reports are byte-deterministic.
using Cell = std::variant<Int, double, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;  // each row matches columns in size

    void add_row(std::vector<Cell> cells);
};

std::string render_cell(const Cell& c);

// Comma-separated with a mandatory header row and LF line endings; fields
// are quoted only when they contain a comma, quote, or newline.
std::string to_csv(const Table& t);

// Array of objects, one per row, keys in column order.
std::string to_json(const Table& t);

std::string render_table(const Table& t, OutputFormat format);

struct FitPoint {
    std::int64_t n;
    std::uint64_t count;
    double main_term;
    double residual;  // count - main_term
};

struct FitReport {
    std::vector<FitPoint> per_n;  // sorted by n ascending
    double fitted_exponent;       // least-squares slope of log count vs log n
    double theta_reference;
    double two_over_ddagger;
};

// Fit the growth exponent of observed counts against the predicted main
// term.  Requires at least two distinct window sizes with positive counts;
// windows with zero counts are excluded from the slope (their logs are
// undefined) but still reported.
FitReport asymptotic_fit(const Family& fam, unsigned d,
                         const std::vector<std::pair<std::int64_t, std::uint64_t>>& counts,
                         double tolerance);

}  // namespace binform
