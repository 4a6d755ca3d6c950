#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ixpanel/errors.hpp"
#include "ixpanel/series.hpp"
#include "ixpanel/signs.hpp"
#include "ixpanel/stats.hpp"

namespace ixp {

/// Where the calendar-month growth profile behind a forecast comes from.
enum class ProfileScheme {
    Pooled,    ///< all regions' growth pooled (the default; most data per month)
    PerIndex,  ///< only the forecast region's own growth
};

inline const char* scheme_name(ProfileScheme s) {
    return s == ProfileScheme::Pooled ? "pooled" : "per-index";
}

/// Multiplicative seasonal level forecast for one region.
struct SeasonalForecast {
    std::string region_code;
    ProfileScheme scheme = ProfileScheme::Pooled;
    MonthStamp origin;              ///< last observed month; forecasts start one month later
    MonthRange training;            ///< window the month profile was estimated on
    std::vector<double> predicted_level;  ///< element k = level at origin + (k+1)
    std::vector<double> band_low;   ///< one pooled monthly sigma below, accumulated in quadrature
    std::vector<double> band_high;
};

/**
 * Forecast levels by compounding mean calendar-month growth:
 *     p(origin + k) = p(origin) * exp( sum_{i=1..k} mean_g[month(origin + i)] )
 * with mean_g from the training window under the chosen scheme.  The band
 * is +-1 pooled monthly sigma, variances added across horizon months.
 *
 * Throws KeyError (unknown region), DomainError (horizon < 1), and
 * InsufficientData when some calendar month has no training observation —
 * for the per-index scheme the message suggests pooling.
 */
inline SeasonalForecast forecast_levels(const PricePanel& panel, const std::string& region,
                                        ProfileScheme scheme, const MonthRange& training,
                                        int horizon = 12) {
    if (horizon < 1) throw DomainError("forecast horizon must be >= 1 months");
    const IndexSeries& target = panel.require(region);
    const std::vector<GrowthSeries> growth = growth_panel(panel);

    const MonthProfile pooled = month_profile(growth, training);
    MonthProfile profile = pooled;
    if (scheme == ProfileScheme::PerIndex) {
        const GrowthSeries* own = nullptr;
        for (const auto& g : growth)
            if (g.region_code == region) own = &g;
        try {
            profile = month_profile(std::span<const GrowthSeries>(own, 1), training);
        } catch (const InsufficientData& e) {
            throw InsufficientData(std::string(e.what()) +
                                   " (per-index scheme; the pooled scheme may still apply)");
        }
    }

    SeasonalForecast fc;
    fc.region_code = region;
    fc.scheme = scheme;
    fc.origin = target.end();
    fc.training = training;
    const double p0 = target.values.back();
    double cum = 0.0, var = 0.0;
    for (int k = 1; k <= horizon; ++k) {
        const int m = fc.origin.plus_months(k).month;
        cum += profile.mean[m - 1];
        var += pooled.stddev[m - 1] * pooled.stddev[m - 1];
        const double sigma = std::sqrt(var);
        fc.predicted_level.push_back(p0 * std::exp(cum));
        fc.band_low.push_back(p0 * std::exp(cum - sigma));
        fc.band_high.push_back(p0 * std::exp(cum + sigma));
    }
    return fc;
}

/// Predicted signs of upcoming growth increments g(t) - g(t-1).
struct SignPrediction {
    std::vector<MonthStamp> months;
    std::vector<char> sign;  ///< '+', '-', or '0' for an exactly flat profile step
};

/**
 * Predict the sign of g(t) - g(t-1) for `count` months starting at `from`
 * purely from the calendar profile: the sign of
 * mean_g[month(t)] - mean_g[month(t-1)].
 */
inline SignPrediction predict_signs(const MonthProfile& profile, MonthStamp from, int count) {
    if (count < 0) throw DomainError("sign prediction count must be >= 0");
    SignPrediction pred;
    for (int k = 0; k < count; ++k) {
        const MonthStamp t = from.plus_months(k);
        const double d = profile.mean[t.month - 1] - profile.mean[t.prev().month - 1];
        pred.months.push_back(t);
        pred.sign.push_back(d > 0.0 ? '+' : d < 0.0 ? '-' : '0');
    }
    return pred;
}

/// Outcome of checking a sign prediction against realized growth.
struct SignEvaluation {
    struct MonthOutcome {
        MonthStamp month;
        char predicted = '0';
        std::size_t hits = 0;
        std::size_t total = 0;  ///< regions with a nonzero realized increment
        std::size_t ties = 0;   ///< exact zeros, excluded from total
    };
    std::vector<MonthOutcome> per_month;
    std::size_t hits = 0;
    std::size_t total = 0;
    double hit_ratio = 0.0;
};

/**
 * Score predicted increment signs against realized growth series, region by
 * region and month by month.  Months without any realized increment are
 * skipped; InsufficientData when *no* predicted month overlaps the data.
 */
inline SignEvaluation evaluate_signs(const SignPrediction& prediction,
                                     std::span<const GrowthSeries> realized) {
    SignEvaluation ev;
    for (std::size_t i = 0; i < prediction.months.size(); ++i) {
        const MonthStamp t = prediction.months[i];
        SignEvaluation::MonthOutcome out;
        out.month = t;
        out.predicted = prediction.sign[i];
        for (const auto& g : realized) {
            if (!g.contains(t) || !g.contains(t.prev())) continue;
            const double d = g.at(t) - g.at(t.prev());
            if (d == 0.0) {
                ++out.ties;
                continue;
            }
            ++out.total;
            if ((d > 0.0 && out.predicted == '+') || (d < 0.0 && out.predicted == '-')) ++out.hits;
        }
        if (out.total + out.ties == 0) continue;
        ev.hits += out.hits;
        ev.total += out.total;
        ev.per_month.push_back(out);
    }
    if (ev.per_month.empty())
        throw InsufficientData("no predicted month overlaps the realized growth series");
    ev.hit_ratio = ev.total > 0 ? static_cast<double>(ev.hits) / static_cast<double>(ev.total) : 0.0;
    return ev;
}

}  // namespace ixp
