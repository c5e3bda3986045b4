#include "binform/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "binform/constants.hpp"

namespace binform {

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size())
        throw std::invalid_argument("Table: row width does not match column count");
    rows.push_back(std::move(cells));
}

namespace {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

}  // namespace

std::string render_cell(const Cell& c) {
    if (const Int* z = std::get_if<Int>(&c)) return z->get_str();
    if (const double* d = std::get_if<double>(&c)) return format_real(*d);
    if (const bool* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return std::get<std::string>(c);
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(render_cell(row[i]));
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    std::string out = "[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out += r ? ",\n " : "\n ";
        out += '{';
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            if (i) out += ", ";
            out += json_escape(t.columns[i]);
            out += ": ";
            const Cell& c = t.rows[r][i];
            if (const std::string* s = std::get_if<std::string>(&c)) {
                out += json_escape(*s);
            } else if (const double* d = std::get_if<double>(&c); d && !std::isfinite(*d)) {
                out += "null";  // JSON has no literal for nan/inf
            } else if (const Int* z = std::get_if<Int>(&c); z && !fits_long(*z)) {
                out += json_escape(z->get_str());  // exact past the native range
            } else {
                out += render_cell(c);
            }
        }
        out += '}';
    }
    out += t.rows.empty() ? "]\n" : "\n]\n";
    return out;
}

std::string render_table(const Table& t, OutputFormat format) {
    return format == OutputFormat::csv ? to_csv(t) : to_json(t);
}

FitReport asymptotic_fit(const Family& fam, unsigned d,
                         const std::vector<std::pair<std::int64_t, std::uint64_t>>& counts,
                         double tolerance) {
    const CoeffSet* pairs = fam.at(d);
    double density = 0.0;
    if (pairs)
        for (const auto& [a, b] : *pairs)
            density += density_constant(BinomialForm(a, b, d), tolerance).value;

    FitReport report;
    report.theta_reference = theta_exponent(d);
    report.two_over_ddagger = two_over_ddagger(d_dagger(fam, d));

    std::vector<std::pair<std::int64_t, std::uint64_t>> sorted(counts);
    std::sort(sorted.begin(), sorted.end());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t fitted = 0;
    std::int64_t last_n = -1;
    for (const auto& [n, count] : sorted) {
        if (n < 1) throw std::invalid_argument("asymptotic_fit: window sizes must be positive");
        if (n == last_n) continue;
        last_n = n;
        double main = density * std::pow(static_cast<double>(n), 2.0 / static_cast<double>(d));
        report.per_n.push_back({n, count, main, static_cast<double>(count) - main});
        if (count > 0) {
            double lx = std::log(static_cast<double>(n));
            double ly = std::log(static_cast<double>(count));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++fitted;
        }
    }
    if (report.per_n.size() < 2)
        throw std::invalid_argument("asymptotic_fit: need at least two distinct window sizes");
    if (fitted == 0) throw std::invalid_argument("asymptotic_fit: all counts are zero (log undefined)");
    if (fitted < 2)
        throw std::invalid_argument("asymptotic_fit: need at least two windows with positive counts");
    double k = static_cast<double>(fitted);
    report.fitted_exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    return report;
}

}  // namespace binform
