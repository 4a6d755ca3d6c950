#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ixpanel/errors.hpp"
#include "ixpanel/series.hpp"

namespace ixp {

inline double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

/// Population (1/N) variance about the mean.
inline double variance_pop(std::span<const double> x) {
    if (x.empty()) return 0.0;
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size());
}

inline double stddev_pop(std::span<const double> x) { return std::sqrt(variance_pop(x)); }

/**
 * Pearson correlation of two equal-length samples; 0 when either sample has
 * zero variance (the coefficient is undefined there, and 0 is the neutral
 * value for the diagnostics built on top).
 */
inline double pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n == 0 || n != y.size()) return 0.0;
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

/**
 * Per-calendar-month growth statistics pooled over regions and years.
 * Standard deviations are population (1/N).
 */
struct MonthProfile {
    std::array<double, 12> mean{};    ///< mean growth per calendar month (index 0 = January)
    std::array<double, 12> stddev{};  ///< population sigma per calendar month
    std::array<std::size_t, 12> count{};
};

/**
 * Pool every growth observation with a stamp in [range.from, range.to]
 * across the given series and group by calendar month.  InsufficientData
 * when some calendar month has no observation in the range (the message
 * names the month).
 */
inline MonthProfile month_profile(std::span<const GrowthSeries> growth, const MonthRange& range) {
    std::array<std::vector<double>, 12> buckets;
    for (const auto& g : growth) {
        if (g.empty()) continue;
        const long lo = std::max(range.from.serial(), g.start.serial());
        const long hi = std::min(range.to.serial(), g.end().serial());
        for (long s = lo; s <= hi; ++s) {
            const MonthStamp stamp = MonthStamp::from_serial(s);
            buckets[stamp.month - 1].push_back(g.values[static_cast<std::size_t>(s - g.start.serial())]);
        }
    }
    MonthProfile p;
    for (int m = 0; m < 12; ++m) {
        if (buckets[m].empty())
            throw InsufficientData(std::string("no growth observations for ") + month_name(m + 1) +
                                   " in " + range.str());
        p.mean[m] = mean(buckets[m]);
        p.stddev[m] = stddev_pop(buckets[m]);
        p.count[m] = buckets[m].size();
    }
    return p;
}

}  // namespace ixp
