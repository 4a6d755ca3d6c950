#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "ixpanel/errors.hpp"
#include "ixpanel/series.hpp"

namespace ixp {

/// Sign statistics of month-over-month growth *increments* for one calendar month.
struct MonthSignStats {
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    std::size_t n_tie = 0;               ///< exact zeros, excluded from the fractions
    double positive_fraction = 0.0;      ///< n_pos / (n_pos + n_neg)
    double negative_fraction = 0.0;
    char dominant_sign = '+';
    double dominant_fraction = 0.0;
};

/**
 * Per-calendar-month table of the signs of g(t) - g(t-1), pooled over
 * regions and years.  The increment over months (t-1, t) is attributed to
 * the *later* month t, so e.g. the March row counts February-to-March
 * changes of the growth rate.
 */
struct SignTable {
    std::array<MonthSignStats, 12> month{};  ///< index 0 = January
    MonthRange range{};
    std::size_t n_increments = 0;
};

/**
 * Build the sign table from all increments with both endpoints observed and
 * the later stamp inside `range`.  InsufficientData when some calendar
 * month ends up with no nonzero increment (the message names it).  Exact
 * ties are tallied but excluded from the fractions; equal counts report '+'
 * as dominant with fraction 0.5.
 */
inline SignTable sign_table(std::span<const GrowthSeries> growth, const MonthRange& range) {
    SignTable table;
    table.range = range;
    for (const auto& g : growth) {
        if (g.size() < 2) continue;
        const long lo = std::max(range.from.serial(), g.start.serial() + 1);
        const long hi = std::min(range.to.serial(), g.end().serial());
        for (long s = lo; s <= hi; ++s) {
            const std::size_t k = static_cast<std::size_t>(s - g.start.serial());
            const double d = g.values[k] - g.values[k - 1];
            auto& stats = table.month[MonthStamp::from_serial(s).month - 1];
            if (d > 0.0)
                ++stats.n_pos;
            else if (d < 0.0)
                ++stats.n_neg;
            else
                ++stats.n_tie;
            ++table.n_increments;
        }
    }
    for (int m = 0; m < 12; ++m) {
        auto& stats = table.month[m];
        const std::size_t n = stats.n_pos + stats.n_neg;
        if (n == 0)
            throw InsufficientData(std::string("no nonzero growth increments for ") +
                                   month_name(m + 1) + " in " + range.str());
        stats.positive_fraction = static_cast<double>(stats.n_pos) / static_cast<double>(n);
        stats.negative_fraction = static_cast<double>(stats.n_neg) / static_cast<double>(n);
        if (stats.n_pos >= stats.n_neg) {
            stats.dominant_sign = '+';
            stats.dominant_fraction = stats.positive_fraction;
        } else {
            stats.dominant_sign = '-';
            stats.dominant_fraction = stats.negative_fraction;
        }
    }
    return table;
}

}  // namespace ixp
