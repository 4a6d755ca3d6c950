#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ixpanel/errors.hpp"
#include "ixpanel/series.hpp"

namespace ixp {

/// Shortest decimal string that round-trips the double exactly.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(delim, pos);
        if (next == std::string_view::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

inline bool is_missing_cell(std::string_view cell) {
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "NAN";
}

}  // namespace detail

/**
 * Load a monthly panel from delimited text.
 *
 * Layout: optional leading '#' comment lines, then a header row
 * "date,<code>,<code>,..." followed by one row per month.  Dates are strict
 * "YYYY-MM".  Cells may be blank (or NA/NaN) outside a region's observed
 * span; a blank *inside* a region's span — including months whose entire row
 * is absent — raises GapError naming the region and month.  The delimiter is
 * auto-detected (tab when the header contains one, comma otherwise) unless
 * forced.
 *
 * Throws MalformedInput (bad header, bad date, duplicate date, duplicate
 * region code, unparseable cell — with row/column context), DomainError
 * (non-positive level), GapError, InsufficientData (region with < 2 values).
 */
inline PricePanel load_panel(std::istream& in, std::optional<char> delimiter = std::nullopt) {
    std::vector<std::string> region_codes;
    // month serial -> cells (one optional per region)
    std::map<long, std::vector<std::optional<double>>> rows;
    char delim = ',';
    bool have_header = false;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = detail::trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        if (!have_header) {
            delim = delimiter.value_or(sv.find('\t') != std::string_view::npos ? '\t' : ',');
            auto cells = detail::split(sv, delim);
            std::string_view first = detail::trim(cells[0]);
            if (cells.size() < 2 || (first != "date" && first != "Date" && first != "DATE"))
                throw MalformedInput("line " + std::to_string(line_no) +
                                     ": header must start with \"date\" and name at least one region");
            for (std::size_t c = 1; c < cells.size(); ++c) {
                std::string code(detail::trim(cells[c]));
                if (code.empty())
                    throw MalformedInput("line " + std::to_string(line_no) + ": empty region code in header");
                if (std::find(region_codes.begin(), region_codes.end(), code) != region_codes.end())
                    throw MalformedInput("line " + std::to_string(line_no) + ": duplicate region code \"" +
                                         code + "\"");
                region_codes.push_back(std::move(code));
            }
            have_header = true;
            continue;
        }
        auto cells = detail::split(sv, delim);
        auto stamp = MonthStamp::parse(detail::trim(cells[0]));
        if (!stamp)
            throw MalformedInput("line " + std::to_string(line_no) + ": bad date \"" +
                                 std::string(detail::trim(cells[0])) + "\" (expected YYYY-MM)");
        if (rows.count(stamp->serial()))
            throw MalformedInput("line " + std::to_string(line_no) + ": duplicate date " + stamp->str());
        if (cells.size() != region_codes.size() + 1)
            throw MalformedInput("line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(region_codes.size() + 1) + " columns, found " +
                                 std::to_string(cells.size()));
        std::vector<std::optional<double>> row(region_codes.size());
        for (std::size_t c = 1; c < cells.size(); ++c) {
            std::string_view cell = detail::trim(cells[c]);
            if (detail::is_missing_cell(cell)) continue;
            double v = 0.0;
            auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
                throw MalformedInput("line " + std::to_string(line_no) + ", column \"" +
                                     region_codes[c - 1] + "\": unparseable value \"" + std::string(cell) +
                                     "\"");
            if (!(v > 0.0))
                throw DomainError("line " + std::to_string(line_no) + ", region " + region_codes[c - 1] +
                                  " (" + stamp->str() + "): non-positive index value " + format_double(v));
            row[c - 1] = v;
        }
        rows.emplace(stamp->serial(), std::move(row));
    }

    if (!have_header) throw MalformedInput("no header row found");
    if (rows.empty()) throw MalformedInput("panel has no data rows");

    const long axis_lo = rows.begin()->first;
    const long axis_hi = rows.rbegin()->first;

    PricePanel panel;
    for (std::size_t r = 0; r < region_codes.size(); ++r) {
        long first = -1, last = -1;
        for (long s = axis_lo; s <= axis_hi; ++s) {
            auto it = rows.find(s);
            const bool present = it != rows.end() && it->second[r].has_value();
            if (present) {
                if (first < 0) first = s;
                last = s;
            }
        }
        if (first < 0)
            throw InsufficientData("region " + region_codes[r] + " has no values");
        IndexSeries series;
        series.region_code = region_codes[r];
        series.start = MonthStamp::from_serial(first);
        for (long s = first; s <= last; ++s) {
            auto it = rows.find(s);
            if (it == rows.end() || !it->second[r].has_value())
                throw GapError(region_codes[r], MonthStamp::from_serial(s));
            series.values.push_back(*it->second[r]);
        }
        if (series.size() < 2)
            throw InsufficientData("region " + region_codes[r] + " has fewer than 2 monthly values");
        panel.series.push_back(std::move(series));
    }
    return panel;
}

/// load_panel from a file path; MalformedInput when the file cannot be opened.
inline PricePanel load_panel_file(const std::string& path, std::optional<char> delimiter = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open \"" + path + "\"");
    return load_panel(in, delimiter);
}

/**
 * Write a panel in the canonical layout load_panel reads back: optional '#'
 * comment lines, a header, and one row per month of the overall span with
 * blank cells outside each region's coverage.  Values are shortest
 * round-trip decimals, so load_panel(write_panel(p)) == p bit for bit.
 */
inline void write_panel(const PricePanel& panel, std::ostream& out,
                        const std::vector<std::string>& comments = {}, char delimiter = ',') {
    for (const auto& c : comments) out << "# " << c << "\n";
    out << "date";
    for (const auto& s : panel.series) out << delimiter << s.region_code;
    out << "\n";
    const MonthRange span = panel.span();
    for (long serial = span.from.serial(); serial <= span.to.serial(); ++serial) {
        const MonthStamp stamp = MonthStamp::from_serial(serial);
        out << stamp.str();
        for (const auto& s : panel.series) {
            out << delimiter;
            if (s.contains(stamp)) out << format_double(s.at(stamp));
        }
        out << "\n";
    }
}

}  // namespace ixp
