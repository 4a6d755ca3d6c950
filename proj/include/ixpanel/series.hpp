#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ixpanel/errors.hpp"
#include "ixpanel/month.hpp"

namespace ixp {

namespace detail {

/// Shared shape of a monthly series: one value per month from `start` on, no holes.
template <class Derived>
struct MonthlySeries {
    std::string region_code;
    MonthStamp start;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const { return values.size(); }
    [[nodiscard]] bool empty() const { return values.empty(); }

    /// Last covered month; series must be non-empty.
    [[nodiscard]] MonthStamp end() const {
        return start.plus_months(static_cast<long>(values.size()) - 1);
    }

    [[nodiscard]] MonthStamp stamp_at(std::size_t k) const {
        return start.plus_months(static_cast<long>(k));
    }

    [[nodiscard]] bool contains(MonthStamp s) const {
        const long k = s.serial() - start.serial();
        return k >= 0 && k < static_cast<long>(values.size());
    }

    /// Position of month `s`; RangeError when outside the covered span.
    [[nodiscard]] std::size_t index_of(MonthStamp s) const {
        if (!contains(s))
            throw RangeError(region_code + ": " + s.str() + " outside covered span " +
                             (empty() ? std::string("<empty>") : start.str() + ":" + end().str()));
        return static_cast<std::size_t>(s.serial() - start.serial());
    }

    [[nodiscard]] double at(MonthStamp s) const { return values[index_of(s)]; }

    /**
     * Restriction to [range.from, range.to], clamped to the covered span.
     * RangeError when the intersection is empty.  Restricting to the full
     * span returns the series unchanged, so the operation is idempotent.
     */
    [[nodiscard]] Derived window(const MonthRange& range) const {
        const long lo = std::max(range.from.serial(), start.serial());
        const long hi = std::min(range.to.serial(), start.serial() + static_cast<long>(values.size()) - 1);
        if (empty() || lo > hi)
            throw RangeError(region_code + ": window " + range.str() + " does not intersect data");
        Derived out;
        out.region_code = region_code;
        out.start = MonthStamp::from_serial(lo);
        const auto first = static_cast<std::size_t>(lo - start.serial());
        out.values.assign(values.begin() + first, values.begin() + first + (hi - lo + 1));
        return out;
    }
};

}  // namespace detail

/// One region's price-index levels, monthly, strictly positive.
struct IndexSeries : detail::MonthlySeries<IndexSeries> {};

/// One region's monthly log-growth g(t) = ln[p(t)/p(t-1)], stamped at the later month t.
struct GrowthSeries : detail::MonthlySeries<GrowthSeries> {};

/// Throws DomainError unless every level is finite and strictly positive.
inline void validate_levels(const IndexSeries& s) {
    for (std::size_t k = 0; k < s.values.size(); ++k)
        if (!(s.values[k] > 0.0) || !std::isfinite(s.values[k]))
            throw DomainError("region " + s.region_code + ": non-positive index value at " +
                              s.stamp_at(k).str());
}

/**
 * Monthly log-growth of a level series.  The increment over (t-1, t] is
 * stamped at the later month t, so the result starts one month after the
 * input and is one element shorter.
 */
inline GrowthSeries compute_growth(const IndexSeries& s) {
    if (s.size() < 2)
        throw InsufficientData("region " + s.region_code +
                               ": need at least 2 monthly levels to form growth, have " +
                               std::to_string(s.size()));
    validate_levels(s);
    GrowthSeries g;
    g.region_code = s.region_code;
    g.start = s.start.next();
    g.values.resize(s.size() - 1);
    for (std::size_t k = 1; k < s.size(); ++k)
        g.values[k - 1] = std::log(s.values[k] / s.values[k - 1]);
    return g;
}

/// A panel of per-region index series (one series per region, unique codes).
struct PricePanel {
    std::vector<IndexSeries> series;

    [[nodiscard]] std::size_t size() const { return series.size(); }

    [[nodiscard]] const IndexSeries* find(const std::string& code) const {
        for (const auto& s : series)
            if (s.region_code == code) return &s;
        return nullptr;
    }

    /// KeyError when the region code is unknown.
    [[nodiscard]] const IndexSeries& require(const std::string& code) const {
        if (const auto* s = find(code)) return *s;
        throw KeyError("unknown region code \"" + code + "\"");
    }

    /// Widest month range touched by any region; RangeError on an empty panel.
    [[nodiscard]] MonthRange span() const {
        if (series.empty()) throw RangeError("empty panel has no span");
        long lo = series.front().start.serial();
        long hi = series.front().end().serial();
        for (const auto& s : series) {
            lo = std::min(lo, s.start.serial());
            hi = std::max(hi, s.end().serial());
        }
        return {MonthStamp::from_serial(lo), MonthStamp::from_serial(hi)};
    }

    /// Months covered by *every* region; RangeError when empty or disjoint.
    [[nodiscard]] MonthRange common_span() const {
        if (series.empty()) throw RangeError("empty panel has no span");
        long lo = series.front().start.serial();
        long hi = series.front().end().serial();
        for (const auto& s : series) {
            lo = std::max(lo, s.start.serial());
            hi = std::min(hi, s.end().serial());
        }
        if (lo > hi) throw RangeError("panel regions share no common months");
        return {MonthStamp::from_serial(lo), MonthStamp::from_serial(hi)};
    }
};

/// Growth series for every region of a panel, in panel order.
inline std::vector<GrowthSeries> growth_panel(const PricePanel& panel) {
    std::vector<GrowthSeries> out;
    out.reserve(panel.series.size());
    for (const auto& s : panel.series) out.push_back(compute_growth(s));
    return out;
}

}  // namespace ixp
