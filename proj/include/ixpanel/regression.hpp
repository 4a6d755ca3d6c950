#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ixpanel/errors.hpp"
#include "ixpanel/series.hpp"
#include "ixpanel/stats.hpp"

namespace ixp {

/// One (price, growth) observation of the phase portrait: p(t) paired with
/// g(t) = ln[p(t)/p(t-1)], both stamped at the later month t.
struct PhasePoint {
    std::string region;
    MonthStamp month;
    double price = 0.0;
    double growth = 0.0;
};

/// Fitted line of the phase portrait, in the form  g = alpha * p - beta.
struct GrowthPriceRegression {
    std::string scope;   ///< "pooled" or a region code
    std::string period;  ///< "all" or a sub-range label "YYYY-MM:YYYY-MM"
    double alpha = 0.0;  ///< slope (per month, per price unit)
    double beta = 0.0;   ///< minus the intercept (per month)
    double correlation = 0.0;
    std::size_t n = 0;
};

struct RegressionReport {
    GrowthPriceRegression pooled;
    std::vector<GrowthPriceRegression> per_region;
    double region_correlation_mean = 0.0;
    double region_correlation_std = 0.0;  ///< population sigma across regions
    std::vector<GrowthPriceRegression> per_period;  ///< pooled, one per segment
};

/**
 * All (price, growth) pairs of a panel, optionally restricted to months in
 * `window`, in region order then month order.
 */
inline std::vector<PhasePoint> phase_points(const PricePanel& panel,
                                            std::optional<MonthRange> window = std::nullopt) {
    std::vector<PhasePoint> pts;
    for (const auto& s : panel.series) {
        const GrowthSeries g = compute_growth(s);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const MonthStamp t = g.stamp_at(k);
            if (window && !window->contains(t)) continue;
            pts.push_back({s.region_code, t, s.at(t), g.values[k]});
        }
    }
    return pts;
}

namespace detail {

inline GrowthPriceRegression regress_pairs(std::span<const PhasePoint> pts, std::string scope,
                                           std::string period) {
    if (pts.size() < 3)
        throw InsufficientData("regression scope \"" + scope + "\" period \"" + period +
                               "\": need at least 3 (price, growth) pairs, have " +
                               std::to_string(pts.size()));
    std::vector<double> p(pts.size()), g(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        p[i] = pts[i].price;
        g[i] = pts[i].growth;
    }
    const double mp = mean(p), mg = mean(g);
    double spp = 0.0, spg = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        spp += (p[i] - mp) * (p[i] - mp);
        spg += (p[i] - mp) * (g[i] - mg);
    }
    if (spp <= 0.0)
        throw DegenerateRegression("regression scope \"" + scope + "\" period \"" + period +
                                   "\": price variance is zero");
    GrowthPriceRegression r;
    r.scope = std::move(scope);
    r.period = std::move(period);
    r.alpha = spg / spp;
    r.beta = -(mg - r.alpha * mp);
    r.correlation = pearson(p, g);
    r.n = pts.size();
    return r;
}

}  // namespace detail

/**
 * Growth-versus-price regressions of a panel: pooled over all regions,
 * per region, and (when period boundaries are given) pooled within each
 * period.  Boundaries split the covered months at the *start* of each
 * boundary month: with boundaries {b1, b2} the periods are
 * [span.from, b1-1], [b1, b2-1], [b2, span.to].  The pooled regression is
 * by construction the regression over the concatenation of the per-region
 * point sets.
 */
inline RegressionReport regress_growth_on_price(const PricePanel& panel,
                                                std::span<const MonthStamp> boundaries = {},
                                                std::optional<MonthRange> window = std::nullopt) {
    const std::vector<PhasePoint> all = phase_points(panel, window);
    if (all.empty()) throw InsufficientData("panel yields no (price, growth) pairs");

    RegressionReport report;
    report.pooled = detail::regress_pairs(all, "pooled", "all");

    std::vector<double> corrs;
    for (const auto& s : panel.series) {
        std::vector<PhasePoint> pts;
        for (const auto& pt : all)
            if (pt.region == s.region_code) pts.push_back(pt);
        report.per_region.push_back(detail::regress_pairs(pts, s.region_code, "all"));
        corrs.push_back(report.per_region.back().correlation);
    }
    report.region_correlation_mean = mean(corrs);
    report.region_correlation_std = stddev_pop(corrs);

    if (!boundaries.empty()) {
        MonthRange covered{all.front().month, all.front().month};
        for (const auto& pt : all) {
            covered.from = std::min(covered.from, pt.month);
            covered.to = std::max(covered.to, pt.month);
        }
        for (std::size_t i = 0; i + 1 < boundaries.size(); ++i)
            if (!(boundaries[i] < boundaries[i + 1]))
                throw RangeError("period boundaries must be strictly increasing");
        std::vector<MonthRange> periods;
        MonthStamp lo = covered.from;
        for (const auto& b : boundaries) {
            if (b <= lo || b > covered.to)
                throw RangeError("period boundary " + b.str() + " outside covered span " +
                                 covered.str());
            periods.push_back({lo, b.prev()});
            lo = b;
        }
        periods.push_back({lo, covered.to});
        for (const auto& per : periods) {
            std::vector<PhasePoint> pts;
            for (const auto& pt : all)
                if (per.contains(pt.month)) pts.push_back(pt);
            report.per_period.push_back(detail::regress_pairs(pts, "pooled", per.str()));
        }
    }
    return report;
}

}  // namespace ixp
