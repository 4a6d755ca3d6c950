#pragma once

#include <charconv>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace ixp {

/**
 * A calendar month.  The time coordinate used throughout the library is the
 * month serial 12*year + (month-1), so consecutive months differ by exactly 1
 * and fractional serials interpolate between month starts.  serial/12 is the
 * fractional calendar year (January of year Y maps to Y.0).
 */
struct MonthStamp {
    int year = 0;
    int month = 1;  ///< 1 = January .. 12 = December

    [[nodiscard]] long serial() const { return 12L * year + (month - 1); }

    static MonthStamp from_serial(long s) {
        long y = s / 12;
        int m = static_cast<int>(s % 12);
        if (m < 0) { m += 12; --y; }
        return {static_cast<int>(y), m + 1};
    }

    [[nodiscard]] MonthStamp plus_months(long k) const { return from_serial(serial() + k); }
    [[nodiscard]] MonthStamp next() const { return plus_months(1); }
    [[nodiscard]] MonthStamp prev() const { return plus_months(-1); }

    /// Lexicographic (year, month) order coincides with serial order.
    auto operator<=>(const MonthStamp&) const = default;

    /// "YYYY-MM" with a zero-padded 4-digit year and 2-digit month.
    [[nodiscard]] std::string str() const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
        return buf;
    }

    /**
     * Parse "YYYY-MM".  Returns nullopt for anything else (wrong shape,
     * non-digits, month outside 1..12); callers attach file/row context.
     */
    static std::optional<MonthStamp> parse(std::string_view text) {
        const auto dash = text.find('-');
        if (dash == std::string_view::npos || dash == 0 || dash + 1 >= text.size())
            return std::nullopt;
        int y = 0, m = 0;
        const char* yb = text.data();
        const char* ye = text.data() + dash;
        const char* mb = text.data() + dash + 1;
        const char* me = text.data() + text.size();
        auto yr = std::from_chars(yb, ye, y);
        auto mr = std::from_chars(mb, me, m);
        if (yr.ec != std::errc() || yr.ptr != ye) return std::nullopt;
        if (mr.ec != std::errc() || mr.ptr != me) return std::nullopt;
        if (m < 1 || m > 12) return std::nullopt;
        return MonthStamp{y, m};
    }
};

/// Three-letter English month name, m in 1..12.
inline const char* month_name(int m) {
    static const char* names[12] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    return (m >= 1 && m <= 12) ? names[m - 1] : "???";
}

/// Fractional calendar year of a (possibly fractional) month serial.
inline double year_fraction(double serial) { return serial / 12.0; }

/// Inclusive month range, parsed from "YYYY-MM:YYYY-MM".
struct MonthRange {
    MonthStamp from;
    MonthStamp to;

    [[nodiscard]] bool contains(MonthStamp s) const { return from <= s && s <= to; }
    [[nodiscard]] long length_months() const { return to.serial() - from.serial() + 1; }

    static std::optional<MonthRange> parse(std::string_view text) {
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) return std::nullopt;
        auto a = MonthStamp::parse(text.substr(0, colon));
        auto b = MonthStamp::parse(text.substr(colon + 1));
        if (!a || !b || *b < *a) return std::nullopt;
        return MonthRange{*a, *b};
    }

    [[nodiscard]] std::string str() const { return from.str() + ":" + to.str(); }
};

}  // namespace ixp
