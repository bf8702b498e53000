#pragma once

#include "../solver.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace pgm::bench {

inline constexpr std::array<std::string_view, 10> kTraceColumns{
    "k",     "f",          "residual",    "alpha",      "beta", "inner_trials",
    "f_lev", "epsilon_qf", "dist_anchor", "dist_known_solution"};

/// One CSV line, as parsed back.
struct TraceRow {
    int k = 0;
    double f = kNaN;
    double residual = kNaN;
    double alpha = kNaN;
    double beta = kNaN;
    int inner_trials = 0;
    double f_lev = kNaN;
    double epsilon_qf = kNaN;
    double dist_anchor = kNaN;
    double dist_known_solution = kNaN;
};

class TraceFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal that reads back to the same double.
inline std::string format_number(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view s) {
    if (s == "nan")
        return kNaN;
    if (s == "inf")
        return kInf;
    if (s == "-inf")
        return -kInf;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw TraceFormatError("bad number '" + std::string(s) + "'");
    return v;
}

inline TraceRow to_row(const IterateRecord &r) {
    return {r.k,     r.f_val,      r.residual,    r.alpha, r.beta, r.inner_trials,
            r.f_lev, r.epsilon_qf, r.dist_anchor, r.dist_known_solution};
}

inline void write_trace_csv(std::ostream &out, const std::vector<IterateRecord> &trace) {
    for (std::size_t i = 0; i < kTraceColumns.size(); ++i)
        out << (i ? "," : "") << kTraceColumns[i];
    out << '\n';
    for (const auto &r : trace) {
        out << r.k << ',' << format_number(r.f_val) << ',' << format_number(r.residual) << ','
            << format_number(r.alpha) << ',' << format_number(r.beta) << ',' << r.inner_trials
            << ',' << format_number(r.f_lev) << ',' << format_number(r.epsilon_qf) << ','
            << format_number(r.dist_anchor) << ',' << format_number(r.dist_known_solution) << '\n';
    }
}

inline std::vector<TraceRow> read_trace_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line))
        throw TraceFormatError("empty trace");
    std::string header;
    for (std::size_t i = 0; i < kTraceColumns.size(); ++i)
        header += (i ? "," : "") + std::string(kTraceColumns[i]);
    if (line != header)
        throw TraceFormatError("unexpected header '" + line + "'");

    std::vector<TraceRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string_view> cells;
        std::string_view rest(line);
        for (;;) {
            const auto comma = rest.find(',');
            cells.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (cells.size() != kTraceColumns.size())
            throw TraceFormatError("line " + std::to_string(lineno) + ": expected " +
                                   std::to_string(kTraceColumns.size()) + " cells");
        try {
            TraceRow r;
            r.k = static_cast<int>(parse_number(cells[0]));
            r.f = parse_number(cells[1]);
            r.residual = parse_number(cells[2]);
            r.alpha = parse_number(cells[3]);
            r.beta = parse_number(cells[4]);
            r.inner_trials = static_cast<int>(parse_number(cells[5]));
            r.f_lev = parse_number(cells[6]);
            r.epsilon_qf = parse_number(cells[7]);
            r.dist_anchor = parse_number(cells[8]);
            r.dist_known_solution = parse_number(cells[9]);
            rows.push_back(r);
        } catch (const TraceFormatError &e) {
            throw TraceFormatError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rows;
}

} // namespace pgm::bench
