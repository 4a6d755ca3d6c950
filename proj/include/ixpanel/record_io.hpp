#pragma once

#include <array>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "ixpanel/bilinear.hpp"
#include "ixpanel/errors.hpp"
#include "ixpanel/fit.hpp"
#include "ixpanel/forecast.hpp"
#include "ixpanel/models.hpp"
#include "ixpanel/month.hpp"
#include "ixpanel/regression.hpp"
#include "ixpanel/signs.hpp"
#include "ixpanel/stats.hpp"
#include "ixpanel/synth.hpp"
#include "ixpanel/version.hpp"

namespace ixp {

using nlohmann::json;

/**
 * Model parameters as a tagged JSON object.  Doubles are emitted in
 * shortest-round-trip form, so params_from_json(params_to_json(p)) == p bit
 * for bit.  Critical and crossover months additionally carry a fractional
 * calendar-year rendering ("*_year") for human consumption; months serials
 * remain the authoritative fields.
 */
inline json params_to_json(const FitParams& params) {
    json o;
    o["kind"] = model_name(kind_of(params));
    struct Visitor {
        json& o;
        void operator()(const PowerLawParams& p) const {
            o["A"] = p.A;
            o["B"] = p.B;
            o["m"] = p.m;
            o["t_c"] = p.t_c;
            o["t_c_year"] = year_fraction(p.t_c);
        }
        void operator()(const ExponentialParams& p) const {
            o["a"] = p.a;
            o["b"] = p.b;
            o["mu"] = p.mu;
            o["t_ref"] = p.t_ref;
        }
        void operator()(const TanhCrossoverParams& p) const {
            o["A"] = p.A;
            o["B"] = p.B;
            o["m"] = p.m;
            o["t_c"] = p.t_c;
            o["t_c_year"] = year_fraction(p.t_c);
            o["tau"] = p.tau;
        }
        void operator()(const ExpTimesPowerParams& p) const {
            o["a"] = p.a;
            o["b"] = p.b;
            o["mu"] = p.mu;
            o["m"] = p.m;
            o["t_c"] = p.t_c;
            o["t_c_year"] = year_fraction(p.t_c);
            o["t_ref"] = p.t_ref;
        }
        void operator()(const ExpPlusPowerParams& p) const {
            o["a"] = p.a;
            o["b"] = p.b;
            o["mu"] = p.mu;
            o["c"] = p.c;
            o["m"] = p.m;
            o["t_c"] = p.t_c;
            o["t_c_year"] = year_fraction(p.t_c);
            o["t_ref"] = p.t_ref;
        }
        void operator()(const MatchedCrossoverParams& p) const {
            o["a"] = p.a;
            o["b"] = p.b;
            o["mu"] = p.mu;
            o["A"] = p.A;
            o["B"] = p.B;
            o["m"] = p.m;
            o["t_c"] = p.t_c;
            o["t_c_year"] = year_fraction(p.t_c);
            o["t_star"] = p.t_star;
            o["t_star_year"] = year_fraction(p.t_star);
        }
    };
    std::visit(Visitor{o}, params);
    return o;
}

/// Inverse of params_to_json; MalformedInput on an unknown kind or missing field.
inline FitParams params_from_json(const json& o) {
    auto get = [&](const char* key) -> double {
        if (!o.contains(key))
            throw MalformedInput(std::string("model params missing field \"") + key + "\"");
        return o.at(key).get<double>();
    };
    const std::string kind = o.value("kind", "");
    if (kind == model_name(ModelKind::PowerLaw))
        return PowerLawParams{get("A"), get("B"), get("m"), get("t_c")};
    if (kind == model_name(ModelKind::Exponential))
        return ExponentialParams{get("a"), get("b"), get("mu"), get("t_ref")};
    if (kind == model_name(ModelKind::TanhCrossover))
        return TanhCrossoverParams{get("A"), get("B"), get("m"), get("t_c"), get("tau")};
    if (kind == model_name(ModelKind::ExpTimesPower))
        return ExpTimesPowerParams{get("a"), get("b"), get("mu"), get("m"), get("t_c"), get("t_ref")};
    if (kind == model_name(ModelKind::ExpPlusPower))
        return ExpPlusPowerParams{get("a"), get("b"), get("mu"), get("c"),
                                  get("m"), get("t_c"), get("t_ref")};
    if (kind == model_name(ModelKind::MatchedCrossover)) {
        MatchedCrossoverParams p{};
        p.a = get("a");
        p.b = get("b");
        p.mu = get("mu");
        p.A = get("A");
        p.B = get("B");
        p.m = get("m");
        p.t_c = get("t_c");
        p.t_star = get("t_star");
        return p;
    }
    throw MalformedInput("unknown model kind \"" + kind + "\"");
}

inline json fit_result_to_json(const FitResult& r) {
    json o;
    o["region"] = r.region_code;
    o["model"] = model_name(kind_of(r.params));
    o["params"] = params_to_json(r.params);
    o["rms"] = r.rms;
    o["window"] = r.window.str();
    o["n_points"] = r.n_points;
    o["n_starts"] = r.n_starts;
    o["converged"] = r.converged;
    try {
        o["regime"] = regime_name(classify_regime(r.params));
    } catch (const NotApplicable&) {
        o["regime"] = "not-applicable";
    }
    return o;
}

inline json regression_to_json(const GrowthPriceRegression& r) {
    return json{{"scope", r.scope},      {"period", r.period},
                {"alpha", r.alpha},      {"beta", r.beta},
                {"correlation", r.correlation}, {"n", r.n}};
}

inline json regression_report_to_json(const RegressionReport& rep) {
    json o;
    o["pooled"] = regression_to_json(rep.pooled);
    o["per_region"] = json::array();
    for (const auto& r : rep.per_region) o["per_region"].push_back(regression_to_json(r));
    o["region_correlation"] = {{"mean", rep.region_correlation_mean},
                               {"std", rep.region_correlation_std},
                               {"std_kind", "population"}};
    o["per_period"] = json::array();
    for (const auto& r : rep.per_period) o["per_period"].push_back(regression_to_json(r));
    return o;
}

inline json profile_to_json(const MonthProfile& p, const MonthRange& window) {
    json o;
    o["window"] = window.str();
    o["std_kind"] = "population";
    o["months"] = json::array();
    for (int m = 0; m < 12; ++m)
        o["months"].push_back(json{{"month", month_name(m + 1)},
                                   {"mean", p.mean[m]},
                                   {"stddev", p.stddev[m]},
                                   {"count", p.count[m]}});
    return o;
}

inline json decomposition_to_json(const SeasonalDecomposition& d) {
    json o;
    o["years"] = d.years;
    o["f"] = d.f;
    o["j"] = d.j;
    o["h"] = std::vector<double>(d.h.begin(), d.h.end());
    o["residual_rms"] = d.residual_rms;
    o["iterations"] = d.iterations;
    o["degenerate"] = d.degenerate;
    o["cost_history"] = d.cost_history;
    o["residuals"] = json::array();
    for (const auto& row : d.residuals)
        o["residuals"].push_back(std::vector<double>(row.begin(), row.end()));
    return o;
}

inline json sign_table_to_json(const SignTable& t) {
    json o;
    o["window"] = t.range.str();
    o["n_increments"] = t.n_increments;
    o["months"] = json::array();
    for (int m = 0; m < 12; ++m) {
        const auto& s = t.month[m];
        o["months"].push_back(json{{"month", month_name(m + 1)},
                                   {"n_pos", s.n_pos},
                                   {"n_neg", s.n_neg},
                                   {"n_tie", s.n_tie},
                                   {"positive_fraction", s.positive_fraction},
                                   {"negative_fraction", s.negative_fraction},
                                   {"dominant_sign", std::string(1, s.dominant_sign)},
                                   {"dominant_fraction", s.dominant_fraction}});
    }
    return o;
}

inline json forecast_to_json(const SeasonalForecast& f) {
    json o;
    o["region"] = f.region_code;
    o["scheme"] = scheme_name(f.scheme);
    o["origin"] = f.origin.str();
    o["training"] = f.training.str();
    o["months"] = json::array();
    for (std::size_t k = 0; k < f.predicted_level.size(); ++k)
        o["months"].push_back(json{{"month", f.origin.plus_months(static_cast<long>(k) + 1).str()},
                                   {"level", f.predicted_level[k]},
                                   {"low", f.band_low[k]},
                                   {"high", f.band_high[k]}});
    return o;
}

inline json evaluation_to_json(const SignEvaluation& ev) {
    json o;
    o["hits"] = ev.hits;
    o["total"] = ev.total;
    o["hit_ratio"] = ev.hit_ratio;
    o["months"] = json::array();
    for (const auto& m : ev.per_month)
        o["months"].push_back(json{{"month", m.month.str()},
                                   {"predicted", std::string(1, m.predicted)},
                                   {"hits", m.hits},
                                   {"total", m.total},
                                   {"ties", m.ties}});
    return o;
}

inline json scenario_to_json(const ScenarioSpec& s) {
    json o;
    o["start"] = s.start.str();
    o["n_months"] = s.n_months;
    o["n_regions"] = s.n_regions;
    o["level"] = {{"a", s.level_a}, {"b", s.level_b}, {"mu", s.level_mu}};
    if (s.bubble)
        o["bubble"] = {{"B", s.bubble->B},
                       {"m", s.bubble->m},
                       {"t_c_year", year_fraction(s.bubble->t_c)},
                       {"from", s.bubble->from.str()},
                       {"to", s.bubble->to.str()}};
    o["seasonal"] = {{"f", s.seasonal_f},
                     {"h", std::vector<double>(s.seasonal_h.begin(), s.seasonal_h.end())},
                     {"j", s.seasonal_j}};
    o["noise_sigma"] = s.noise_sigma;
    o["smooth3"] = s.smooth3;
    o["seed"] = s.seed;
    return o;
}

/// Parse a scenario recipe; MalformedInput with the offending field named.
inline ScenarioSpec scenario_from_json(const json& o) {
    auto bad = [](const std::string& what) -> MalformedInput {
        return MalformedInput("scenario: " + what);
    };
    ScenarioSpec s;
    try {
        if (o.contains("start")) {
            const auto st = MonthStamp::parse(o.at("start").get<std::string>());
            if (!st) throw bad("unparseable \"start\" (expected YYYY-MM)");
            s.start = *st;
        }
        s.n_months = o.value("n_months", s.n_months);
        s.n_regions = o.value("n_regions", s.n_regions);
        if (o.contains("level")) {
            const auto& l = o.at("level");
            s.level_a = l.value("a", s.level_a);
            s.level_b = l.value("b", s.level_b);
            s.level_mu = l.value("mu", s.level_mu);
        }
        if (o.contains("bubble") && !o.at("bubble").is_null()) {
            const auto& b = o.at("bubble");
            BubbleSpec bub;
            bub.B = b.at("B").get<double>();
            bub.m = b.at("m").get<double>();
            bub.t_c = b.at("t_c_year").get<double>() * 12.0;
            const auto from = MonthStamp::parse(b.at("from").get<std::string>());
            const auto to = MonthStamp::parse(b.at("to").get<std::string>());
            if (!from || !to) throw bad("unparseable bubble \"from\"/\"to\"");
            bub.from = *from;
            bub.to = *to;
            s.bubble = bub;
        }
        if (o.contains("seasonal")) {
            const auto& se = o.at("seasonal");
            auto yearly = [&](const char* key) -> std::vector<double> {
                if (!se.contains(key)) return {};
                const auto& v = se.at(key);
                if (v.is_number()) return {v.get<double>()};
                return v.get<std::vector<double>>();
            };
            s.seasonal_f = yearly("f");
            s.seasonal_j = yearly("j");
            if (se.contains("h")) {
                const auto h = se.at("h").get<std::vector<double>>();
                if (h.size() != 12) throw bad("seasonal \"h\" must have exactly 12 entries");
                for (int m = 0; m < 12; ++m) s.seasonal_h[m] = h[static_cast<std::size_t>(m)];
            }
        }
        s.noise_sigma = o.value("noise_sigma", s.noise_sigma);
        s.smooth3 = o.value("smooth3", s.smooth3);
        s.seed = o.value("seed", s.seed);
    } catch (const json::exception& e) {
        throw bad(e.what());
    }
    return s;
}

inline json ground_truth_to_json(const GroundTruth& t) {
    json o;
    o["scenario"] = scenario_to_json(t.spec);
    o["region_seeds"] = t.region_seeds;
    o["clean_levels"] = t.clean_levels;
    o["clean_growth"] = t.clean_growth;
    return o;
}

/**
 * Delimited table with leading '#' metadata comments — the one CSV shape
 * every subcommand emits.  Values must be pre-formatted (format_double for
 * numerics keeps them round-trippable).
 */
inline void write_csv(std::ostream& out, std::span<const std::string> comments,
                      std::span<const std::string> header,
                      const std::vector<std::vector<std::string>>& rows, char delimiter = ',') {
    for (const auto& c : comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? std::string(1, delimiter) : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? std::string(1, delimiter) : "") << row[i];
        out << "\n";
    }
}

}  // namespace ixp
