#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ixpanel/forecast.hpp"
#include "ixpanel/synth.hpp"

using namespace ixp;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

IndexSeries levels_from_growth(std::string code, MonthStamp start, double p0,
                               const std::vector<double>& growth) {
    IndexSeries s;
    s.region_code = std::move(code);
    s.start = start;
    s.values.push_back(p0);
    for (double g : growth) s.values.push_back(s.values.back() * std::exp(g));
    return s;
}

GrowthSeries growth_of(std::string code, MonthStamp start, std::vector<double> values) {
    GrowthSeries g;
    g.region_code = std::move(code);
    g.start = start;
    g.values = std::move(values);
    return g;
}

}  // namespace

TEST_CASE("zero-mean seasonal growth forecasts a flat level", "[forecast]") {
    // each calendar month's growth flips sign year over year, so the
    // training means vanish and the forecast must stay at the last level
    std::vector<double> growth;
    for (long k = 1; k <= 48; ++k) {
        const MonthStamp t = MonthStamp{2001, 1}.plus_months(k - 1);
        const double amp = 0.001 * static_cast<double>(t.month);
        growth.push_back(t.year % 2 == 0 ? amp : -amp);
    }
    PricePanel panel;
    panel.series.push_back(levels_from_growth("Z", {2000, 12}, 100.0, growth));

    const SeasonalForecast fc = forecast_levels(panel, "Z", ProfileScheme::Pooled,
                                                MonthRange{{2001, 1}, {2004, 12}}, 12);
    REQUIRE(fc.predicted_level.size() == 12);
    const double p0 = panel.series[0].values.back();
    for (double p : fc.predicted_level) CHECK_THAT(p, WithinRel(p0, 1e-12));
    CHECK(fc.origin == MonthStamp{2004, 12});
}

TEST_CASE("an exactly seasonal panel forecasts its own continuation", "[forecast]") {
    ScenarioSpec spec;
    spec.start = {2000, 1};
    spec.n_months = 108;  // through 2008-12
    spec.n_regions = 1;
    spec.level_a = 100.0;
    for (int m = 0; m < 12; ++m)
        spec.seasonal_h[static_cast<std::size_t>(m)] = 0.004 * std::sin(2.0 * 3.14159265358979323846 * (m + 1) / 12.0) + 0.001;
    const SynthResult full = generate(spec);
    const IndexSeries& whole = full.panel.series[0];

    // hold out the final year and forecast it from the truncated panel
    PricePanel truncated;
    truncated.series.push_back(whole.window(MonthRange{{2000, 1}, {2007, 12}}));
    REQUIRE(truncated.series[0].size() == 96);

    const SeasonalForecast fc =
        forecast_levels(truncated, whole.region_code, ProfileScheme::Pooled,
                        MonthRange{{2001, 1}, {2007, 12}}, 12);
    REQUIRE(fc.origin == MonthStamp{2007, 12});
    for (int k = 0; k < 12; ++k) {
        const MonthStamp t = MonthStamp{2008, 1}.plus_months(k);
        CHECK_THAT(fc.predicted_level[static_cast<std::size_t>(k)],
                   WithinRel(whole.at(t), 1e-10));
    }
}

TEST_CASE("pooled and per-index schemes agree on a homogeneous panel", "[forecast]") {
    ScenarioSpec spec;
    spec.n_months = 72;
    spec.n_regions = 2;  // identical clean series, no noise
    for (int m = 0; m < 12; ++m)
        spec.seasonal_h[static_cast<std::size_t>(m)] = 0.002 * (m - 5);
    const SynthResult synth = generate(spec);

    const MonthRange training{{2001, 1}, {2005, 12}};
    const SeasonalForecast pooled =
        forecast_levels(synth.panel, "R01", ProfileScheme::Pooled, training, 12);
    const SeasonalForecast own =
        forecast_levels(synth.panel, "R01", ProfileScheme::PerIndex, training, 12);

    CHECK(pooled.scheme == ProfileScheme::Pooled);
    CHECK(own.scheme == ProfileScheme::PerIndex);
    for (std::size_t k = 0; k < 12; ++k) {
        CHECK_THAT(own.predicted_level[k], WithinRel(pooled.predicted_level[k], 1e-14));
        CHECK_THAT(own.band_low[k], WithinRel(pooled.band_low[k], 1e-13));
        CHECK_THAT(own.band_high[k], WithinRel(pooled.band_high[k], 1e-13));
    }
}

TEST_CASE("uncertainty bands bracket the forecast and widen with the horizon", "[forecast]") {
    ScenarioSpec spec;
    spec.n_months = 60;
    spec.noise_sigma = 0.01;
    spec.seed = 9;
    const SynthResult synth = generate(spec);

    const SeasonalForecast fc = forecast_levels(synth.panel, "R01", ProfileScheme::Pooled,
                                                MonthRange{{2000, 2}, {2004, 12}}, 12);
    double prev_ratio = 1.0;
    for (std::size_t k = 0; k < 12; ++k) {
        CHECK(fc.band_low[k] < fc.predicted_level[k]);
        CHECK(fc.predicted_level[k] < fc.band_high[k]);
        const double ratio = fc.band_high[k] / fc.predicted_level[k];
        CHECK(ratio > prev_ratio);  // accumulated variance only grows
        prev_ratio = ratio;
    }
}

TEST_CASE("forecast input validation", "[forecast]") {
    ScenarioSpec spec;
    spec.n_months = 48;
    const SynthResult synth = generate(spec);
    const MonthRange training{{2001, 1}, {2003, 12}};

    CHECK_THROWS_AS(forecast_levels(synth.panel, "NOPE", ProfileScheme::Pooled, training),
                    KeyError);
    CHECK_THROWS_AS(forecast_levels(synth.panel, "R01", ProfileScheme::Pooled, training, 0),
                    DomainError);
}

TEST_CASE("a short region cannot support the per-index scheme", "[forecast]") {
    // region B stops in mid-2002, so its own growth has no Jul..Dec
    // observations inside a 2002 training window; the pooled profile still
    // covers them through region A
    std::vector<double> ga(35, 0.002), gb(29, 0.003);
    PricePanel panel;
    panel.series.push_back(levels_from_growth("A", {2000, 1}, 100.0, ga));
    panel.series.push_back(levels_from_growth("B", {2000, 1}, 120.0, gb));
    const MonthRange training{{2002, 1}, {2002, 12}};

    CHECK_THROWS_AS(forecast_levels(panel, "B", ProfileScheme::PerIndex, training, 6),
                    InsufficientData);
    CHECK_THROWS_WITH(forecast_levels(panel, "B", ProfileScheme::PerIndex, training, 6),
                      ContainsSubstring("per-index scheme") && ContainsSubstring("Jul"));
    CHECK_NOTHROW(forecast_levels(panel, "B", ProfileScheme::Pooled, training, 6));
}

TEST_CASE("profile steps dictate the predicted increment signs", "[forecast]") {
    MonthProfile prof{};
    prof.mean = {2, 2, 3, 1, 1, 0, 4, 4, 5, 3, 2, 2};

    const SignPrediction pred = predict_signs(prof, {2005, 3}, 14);
    REQUIRE(pred.months.size() == 14);
    REQUIRE(pred.sign.size() == 14);
    //                   Mar  Apr  May  Jun  Jul  Aug  Sep  Oct  Nov  Dec  Jan  Feb  Mar  Apr
    const std::array<char, 14> expect{'+', '-', '0', '-', '+', '0', '+', '-',
                                      '-', '0', '0', '0', '+', '-'};
    for (std::size_t k = 0; k < 14; ++k) {
        CHECK(pred.months[k] == MonthStamp{2005, 3}.plus_months(static_cast<long>(k)));
        CHECK(pred.sign[k] == expect[k]);
    }
    // January's step wraps around to December
    CHECK(pred.months[10] == MonthStamp{2006, 1});

    CHECK(predict_signs(prof, {2005, 1}, 0).months.empty());
    CHECK_THROWS_AS(predict_signs(prof, {2005, 1}, -1), DomainError);
}

namespace {

const std::array<double, 12> kPattern{0, 1, 3, 2, 4, 1, 0, 2, 5, 3, 1, 2};

GrowthSeries seasonal_growth(std::string code, double scale) {
    std::vector<double> v(24);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = scale * kPattern[k % 12];
    return growth_of(std::move(code), {2005, 1}, std::move(v));
}

}  // namespace

TEST_CASE("evaluating a profile against its own pattern scores perfectly", "[forecast]") {
    MonthProfile prof{};
    prof.mean = kPattern;
    const std::vector<GrowthSeries> realized{seasonal_growth("A", 1.0),
                                             seasonal_growth("B", 2.0)};

    const SignPrediction pred = predict_signs(prof, {2005, 2}, 23);
    const SignEvaluation ev = evaluate_signs(pred, realized);

    CHECK(ev.per_month.size() == 23);
    CHECK(ev.total == 46);  // two regions, every increment nonzero
    CHECK(ev.hits == 46);
    CHECK(ev.hit_ratio == 1.0);
    for (const auto& m : ev.per_month) {
        CHECK(m.total == 2);
        CHECK(m.hits == 2);
        CHECK(m.ties == 0);
    }
}

TEST_CASE("an inverted profile scores zero", "[forecast]") {
    MonthProfile prof{};
    for (std::size_t m = 0; m < 12; ++m) prof.mean[m] = -kPattern[m];
    const std::vector<GrowthSeries> realized{seasonal_growth("A", 1.0)};

    const SignEvaluation ev = evaluate_signs(predict_signs(prof, {2005, 2}, 23), realized);
    CHECK(ev.total == 23);
    CHECK(ev.hits == 0);
    CHECK(ev.hit_ratio == 0.0);
}

TEST_CASE("exactly flat realized increments count as ties, not misses", "[forecast]") {
    MonthProfile prof{};
    prof.mean = kPattern;
    GrowthSeries g = seasonal_growth("A", 1.0);
    g.values[5] = g.values[4];  // June 2005 equals May 2005: a tied increment
    const std::vector<GrowthSeries> realized{g};

    const SignEvaluation ev = evaluate_signs(predict_signs(prof, {2005, 2}, 23), realized);
    CHECK(ev.total == 22);
    // the June row is present with the tie recorded
    bool found = false;
    for (const auto& m : ev.per_month)
        if (m.month == MonthStamp{2005, 6}) {
            CHECK(m.ties == 1);
            CHECK(m.total == 0);
            found = true;
        }
    CHECK(found);
    // July's increment now falls from June's raised value but stays negative
    CHECK(ev.hits == 22);
    CHECK(ev.hit_ratio == 1.0);
}

TEST_CASE("a prediction with no overlapping data is rejected", "[forecast]") {
    MonthProfile prof{};
    prof.mean = kPattern;
    const std::vector<GrowthSeries> realized{seasonal_growth("A", 1.0)};
    CHECK_THROWS_AS(evaluate_signs(predict_signs(prof, {2010, 1}, 6), realized),
                    InsufficientData);
}
