#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ixpanel/errors.hpp"
#include "ixpanel/models.hpp"
#include "ixpanel/rng.hpp"
#include "ixpanel/series.hpp"

namespace ixp {

/// Additive power-law overlay B |t_c - t|^m applied on [from, to].
struct BubbleSpec {
    double B = 0.0;
    double m = 0.5;
    double t_c = 0.0;  ///< fractional month serial
    MonthStamp from;
    MonthStamp to;
};

/**
 * Recipe for a synthetic panel with known ground truth.
 *
 * The noiseless backbone level is  base(k) = a + b e^{mu k} (+ bubble term),
 * k months since `start`; the noiseless growth adds a bilinear seasonal
 * component on top of the backbone's log-increment:
 *     g(T, m) = f(T) h(m) + j(T) + ln[ base(k) / base(k-1) ]
 * and levels compound multiplicatively from base(0).  All regions share
 * this clean signal; what differs per region is the multiplicative
 * log-normal level noise (an independent N(0, sigma) shock on log-price per
 * region-month, from a per-region sub-seed) and, when enabled, a trailing
 * 3-month rolling mean applied to the noisy levels.
 */
struct ScenarioSpec {
    MonthStamp start{2000, 1};
    int n_months = 120;
    int n_regions = 1;
    double level_a = 100.0;
    double level_b = 0.0;
    double level_mu = 0.0;  ///< per month
    std::optional<BubbleSpec> bubble;
    std::vector<double> seasonal_f;    ///< per covered year; empty = 1, single value = broadcast
    std::vector<double> seasonal_j;    ///< per covered year; empty = 0, single value = broadcast
    std::array<double, 12> seasonal_h{};  ///< calendar-month pattern (0 = January)
    double noise_sigma = 0.0;
    bool smooth3 = false;
    std::uint64_t seed = 0;
};

struct GroundTruth {
    ScenarioSpec spec;
    std::vector<std::uint64_t> region_seeds;
    std::vector<double> clean_levels;  ///< shared noiseless levels, month start + k
    std::vector<double> clean_growth;  ///< shared noiseless growth, month start + 1 + k
};

struct SynthResult {
    PricePanel panel;
    GroundTruth truth;
};

namespace detail {

inline std::vector<double> expand_yearly(const std::vector<double>& given, std::size_t ny,
                                         double fill, const char* what) {
    if (given.empty()) return std::vector<double>(ny, fill);
    if (given.size() == 1) return std::vector<double>(ny, given[0]);
    if (given.size() != ny)
        throw DomainError(std::string("seasonal ") + what + " needs " + std::to_string(ny) +
                          " per-year values (or 0/1 to broadcast), got " +
                          std::to_string(given.size()));
    return given;
}

}  // namespace detail

/**
 * Generate the panel described by `spec`.  Deterministic: the same spec
 * (seed included) produces the identical panel on every run, and region
 * streams come from per-region sub-seeds, so generation order cannot
 * matter.  Throws DomainError on non-realizable recipes (too few months,
 * non-positive backbone level, negative noise, misshapen factors).
 */
inline SynthResult generate(const ScenarioSpec& spec) {
    if (spec.n_months < 2) throw DomainError("scenario needs at least 2 months");
    if (spec.n_regions < 1) throw DomainError("scenario needs at least 1 region");
    if (spec.noise_sigma < 0.0) throw DomainError("noise sigma must be non-negative");

    const std::size_t n = static_cast<std::size_t>(spec.n_months);
    const MonthStamp last = spec.start.plus_months(spec.n_months - 1);
    const std::size_t ny = static_cast<std::size_t>(last.year - spec.start.year + 1);
    const std::vector<double> f = detail::expand_yearly(spec.seasonal_f, ny, 1.0, "f");
    const std::vector<double> j = detail::expand_yearly(spec.seasonal_j, ny, 0.0, "j");

    std::vector<double> base(n);
    for (std::size_t k = 0; k < n; ++k) {
        const MonthStamp stamp = spec.start.plus_months(static_cast<long>(k));
        double v = spec.level_a + spec.level_b * std::exp(spec.level_mu * static_cast<double>(k));
        if (spec.bubble && stamp >= spec.bubble->from && stamp <= spec.bubble->to)
            v += spec.bubble->B *
                 power_term(spec.bubble->t_c, spec.bubble->m, static_cast<double>(stamp.serial()));
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("scenario backbone level is non-positive at " + stamp.str());
        base[k] = v;
    }

    GroundTruth truth;
    truth.spec = spec;
    truth.clean_levels.resize(n);
    truth.clean_growth.resize(n - 1);
    truth.clean_levels[0] = base[0];
    for (std::size_t k = 1; k < n; ++k) {
        const MonthStamp stamp = spec.start.plus_months(static_cast<long>(k));
        const std::size_t yr = static_cast<std::size_t>(stamp.year - spec.start.year);
        const double g =
            f[yr] * spec.seasonal_h[static_cast<std::size_t>(stamp.month - 1)] + j[yr] +
            std::log(base[k] / base[k - 1]);
        truth.clean_growth[k - 1] = g;
        truth.clean_levels[k] = truth.clean_levels[k - 1] * std::exp(g);
    }

    int width = 2;
    for (int v = spec.n_regions; v >= 100; v /= 10) ++width;
    SynthResult result;
    result.truth = std::move(truth);
    for (int r = 0; r < spec.n_regions; ++r) {
        const std::uint64_t sub = derive_seed(spec.seed, static_cast<std::uint64_t>(r));
        result.truth.region_seeds.push_back(sub);
        Rng rng(sub);
        IndexSeries s;
        std::string digits = std::to_string(r + 1);
        if (digits.size() < static_cast<std::size_t>(width))
            digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
        s.region_code = "R" + digits;
        s.start = spec.start;
        s.values.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            double v = result.truth.clean_levels[k];
            if (spec.noise_sigma > 0.0) v *= std::exp(spec.noise_sigma * rng.normal());
            s.values[k] = v;
        }
        if (spec.smooth3) {
            std::vector<double> smoothed(n);
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t lo = k >= 2 ? k - 2 : 0;
                double acc = 0.0;
                for (std::size_t i = lo; i <= k; ++i) acc += s.values[i];
                smoothed[k] = acc / static_cast<double>(k - lo + 1);
            }
            s.values = std::move(smoothed);
        }
        validate_levels(s);
        result.panel.series.push_back(std::move(s));
    }
    return result;
}

/**
 * Sample a parameterized level model at integer months start..start+n-1.
 * DomainError when the model dips to a non-positive level on the span.
 */
inline IndexSeries series_from_model(const FitParams& params, MonthStamp start, int n,
                                     std::string region_code = "synthetic") {
    if (n < 1) throw DomainError("series_from_model needs n >= 1");
    IndexSeries s;
    s.region_code = std::move(region_code);
    s.start = start;
    s.values.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        s.values[static_cast<std::size_t>(k)] =
            eval_model(params, static_cast<double>(start.serial() + k));
    validate_levels(s);
    return s;
}

}  // namespace ixp
