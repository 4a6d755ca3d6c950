// ixpanel — command-line front end for the monthly price-index panel toolkit.
//
// Every subcommand is a thin adapter: parse flags, call the library, write
// delimited tables and JSON records.  All output files embed the exact
// invocation and the library version (and nothing time-dependent, so a
// repeated invocation reproduces its outputs byte for byte).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ixpanel/ixpanel.hpp"

namespace fs = std::filesystem;
using ixp::json;

namespace {

struct Ctx {
    std::string invocation;
};

std::string join_invocation(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

std::vector<std::string> meta_comments(const Ctx& ctx) {
    return {"invocation: " + ctx.invocation, std::string("version: ") + ixp::kVersion};
}

void add_meta(json& o, const Ctx& ctx) {
    o["invocation"] = ctx.invocation;
    o["version"] = ixp::kVersion;
}

std::ofstream open_out(const fs::path& path) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    std::ofstream f(path);
    if (!f) throw ixp::Error("cannot open \"" + path.string() + "\" for writing");
    return f;
}

void write_json(const fs::path& path, const json& o) {
    auto f = open_out(path);
    f << o.dump(2) << "\n";
}

ixp::MonthRange parse_range(const std::string& text) {
    const auto r = ixp::MonthRange::parse(text);
    if (!r) throw ixp::MalformedInput("bad month range \"" + text + "\" (expected YYYY-MM:YYYY-MM)");
    return *r;
}

ixp::MonthStamp parse_month_arg(const std::string& text) {
    const auto s = ixp::MonthStamp::parse(text);
    if (!s) throw ixp::MalformedInput("bad month \"" + text + "\" (expected YYYY-MM)");
    return *s;
}

ixp::PricePanel load_input(const std::string& path, const std::string& delimiter) {
    std::optional<char> delim;
    if (delimiter == "comma") delim = ',';
    else if (delimiter == "tab") delim = '\t';
    else if (delimiter != "auto")
        throw ixp::MalformedInput("bad --delimiter \"" + delimiter + "\" (auto|comma|tab)");
    return ixp::load_panel_file(path, delim);
}

/// Panel restricted to a window (levels); regions whose span misses it are dropped.
ixp::PricePanel window_panel(const ixp::PricePanel& panel, const std::optional<ixp::MonthRange>& w) {
    if (!w) return panel;
    ixp::PricePanel out;
    for (const auto& s : panel.series) {
        try {
            out.series.push_back(s.window(*w));
        } catch (const ixp::RangeError&) {
            // region entirely outside the window: omit
        }
    }
    if (out.series.empty())
        throw ixp::RangeError("window " + w->str() + " does not intersect any region");
    return out;
}

std::string fmt(double v) { return ixp::format_double(v); }

// ---------------------------------------------------------------------------
// subcommand bodies

void run_ingest(const Ctx& ctx, const std::string& input, const std::string& out_dir,
                const std::string& delimiter) {
    const ixp::PricePanel panel = load_input(input, delimiter);
    auto f = open_out(fs::path(out_dir) / "panel.csv");
    ixp::write_panel(panel, f, meta_comments(ctx));

    json o;
    add_meta(o, ctx);
    o["regions"] = json::array();
    for (const auto& s : panel.series)
        o["regions"].push_back(json{{"code", s.region_code},
                                    {"from", s.start.str()},
                                    {"to", s.end().str()},
                                    {"n_months", s.size()}});
    o["span"] = panel.span().str();
    write_json(fs::path(out_dir) / "ingest_summary.json", o);
    std::cout << "ingested " << panel.size() << " regions, span " << panel.span().str() << "\n";
}

void run_growth(const Ctx& ctx, const std::string& input, const std::string& out_dir,
                const std::optional<ixp::MonthRange>& window) {
    const ixp::PricePanel panel = window_panel(ixp::load_panel_file(input), window);
    const auto growth = ixp::growth_panel(panel);
    const std::vector<std::string> header = {"date", "growth"};
    std::vector<std::vector<std::string>> pooled_rows;
    for (const auto& g : growth) {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t k = 0; k < g.size(); ++k) {
            rows.push_back({g.stamp_at(k).str(), fmt(g.values[k])});
            pooled_rows.push_back({g.stamp_at(k).str(), g.region_code, fmt(g.values[k])});
        }
        auto f = open_out(fs::path(out_dir) / ("growth_" + g.region_code + ".csv"));
        ixp::write_csv(f, meta_comments(ctx), header, rows);
    }
    const std::vector<std::string> pooled_header = {"date", "region", "growth"};
    auto f = open_out(fs::path(out_dir) / "growth_pooled.csv");
    ixp::write_csv(f, meta_comments(ctx), pooled_header, pooled_rows);
    std::cout << "growth written for " << growth.size() << " regions\n";
}

void run_fit(const Ctx& ctx, const std::string& input, const std::string& out_dir,
             const std::string& model, const std::optional<ixp::MonthRange>& window,
             const ixp::FitOptions& opts) {
    const auto kind = ixp::model_from_name(model);
    if (!kind)
        throw ixp::MalformedInput(
            "unknown model \"" + model +
            "\" (power-law|exponential|tanh-crossover|exp-times-power|exp-plus-power|matched-crossover)");
    const ixp::PricePanel panel = ixp::load_panel_file(input);

    std::vector<std::string> header = {"region", "model", "rms", "converged", "regime", "t_c_year", "m"};
    std::vector<std::vector<std::string>> rows;
    std::size_t ok = 0;
    for (const auto& s : panel.series) {
        const ixp::MonthRange w = window.value_or(ixp::MonthRange{s.start, s.end()});
        try {
            const ixp::FitResult r = ixp::fit_model(s, *kind, w, opts);
            json o = ixp::fit_result_to_json(r);
            add_meta(o, ctx);
            write_json(fs::path(out_dir) / ("fit_" + s.region_code + ".json"), o);

            const json p = ixp::params_to_json(r.params);
            const std::string tc = p.contains("t_c_year") ? fmt(p["t_c_year"].get<double>()) : "";
            const std::string m = p.contains("m") ? fmt(p["m"].get<double>()) : "";
            rows.push_back({s.region_code, model, fmt(r.rms), r.converged ? "yes" : "no",
                            o["regime"].get<std::string>(), tc, m});
            std::cout << s.region_code << "  " << model << "  rms=" << fmt(r.rms)
                      << (tc.empty() ? "" : "  t_c=" + tc) << (m.empty() ? "" : "  m=" + m) << "  "
                      << o["regime"].get<std::string>() << (r.converged ? "" : "  [not converged]")
                      << "\n";
            ++ok;
        } catch (const ixp::Error& e) {
            rows.push_back({s.region_code, model, "", "error", e.what(), "", ""});
            std::cout << s.region_code << "  error: " << e.what() << "\n";
        }
    }
    auto f = open_out(fs::path(out_dir) / "fit_summary.csv");
    ixp::write_csv(f, meta_comments(ctx), header, rows);
    if (ok == 0) throw ixp::Error("no region could be fitted");
}

void run_phase(const Ctx& ctx, const std::string& input, const std::string& out_dir,
               const std::optional<ixp::MonthRange>& window,
               const std::vector<std::string>& boundary_args) {
    const ixp::PricePanel panel = ixp::load_panel_file(input);
    std::vector<ixp::MonthStamp> boundaries;
    for (const auto& b : boundary_args) boundaries.push_back(parse_month_arg(b));

    const auto points = ixp::phase_points(panel, window);
    const std::vector<std::string> header = {"date", "price", "growth"};
    for (const auto& s : panel.series) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& pt : points)
            if (pt.region == s.region_code)
                rows.push_back({pt.month.str(), fmt(pt.price), fmt(pt.growth)});
        auto f = open_out(fs::path(out_dir) / ("phase_" + s.region_code + ".csv"));
        ixp::write_csv(f, meta_comments(ctx), header, rows);
    }
    const std::vector<std::string> pooled_header = {"date", "region", "price", "growth"};
    std::vector<std::vector<std::string>> pooled_rows;
    for (const auto& pt : points)
        pooled_rows.push_back({pt.month.str(), pt.region, fmt(pt.price), fmt(pt.growth)});
    auto f = open_out(fs::path(out_dir) / "phase_pooled.csv");
    ixp::write_csv(f, meta_comments(ctx), pooled_header, pooled_rows);

    const ixp::RegressionReport rep = ixp::regress_growth_on_price(panel, boundaries, window);
    json o = ixp::regression_report_to_json(rep);
    add_meta(o, ctx);
    write_json(fs::path(out_dir) / "phase_regressions.json", o);
    std::cout << "pooled: g = " << fmt(rep.pooled.alpha) << " * p - " << fmt(rep.pooled.beta)
              << "  corr=" << fmt(rep.pooled.correlation) << "  n=" << rep.pooled.n << "\n"
              << "per-region corr: " << fmt(rep.region_correlation_mean) << " +- "
              << fmt(rep.region_correlation_std) << "\n";
}

void run_ode(const Ctx& ctx, double alpha, double beta, double p0, const std::string& t0_arg,
             const std::string& out_dir) {
    std::optional<ixp::MonthStamp> t0;
    if (!t0_arg.empty()) t0 = parse_month_arg(t0_arg);
    const auto months = ixp::ode_singularity_months(alpha, beta, p0);

    json o;
    add_meta(o, ctx);
    o["alpha"] = alpha;
    o["beta"] = beta;
    o["p0"] = p0;
    o["has_singularity"] = months.has_value();
    if (months) {
        o["t_c_months_from_start"] = *months;
        std::cout << "finite-time singularity " << fmt(*months) << " months after start";
        if (t0) {
            const double serial = static_cast<double>(t0->serial()) + *months;
            o["t0"] = t0->str();
            o["t_c_year"] = ixp::year_fraction(serial);
            std::cout << " (t0 " << t0->str() << " => year " << fmt(ixp::year_fraction(serial)) << ")";
        }
        std::cout << "\n";
    } else {
        std::cout << "no finite-time singularity: p0 " << fmt(p0)
                  << " is at or below the equilibrium beta/alpha = " << fmt(beta / alpha) << "\n";
    }
    if (!out_dir.empty()) write_json(fs::path(out_dir) / "ode.json", o);
}

void run_spectrum(const Ctx& ctx, const std::string& input, const std::string& out_dir,
                  const std::optional<ixp::MonthRange>& window, int oversample, bool mirror) {
    const ixp::PricePanel panel = window_panel(ixp::load_panel_file(input), window);
    const auto growth = ixp::growth_panel(panel);

    auto write_one = [&](const ixp::Periodogram& p, const std::string& name) {
        std::vector<std::string> header = {"frequency_cycles_per_year", "power"};
        if (mirror) header.push_back("mirrored");
        std::vector<std::vector<std::string>> rows;
        for (std::size_t k = 0; k < p.power.size(); ++k) {
            std::vector<std::string> row = {fmt(p.frequency[k]), fmt(p.power[k])};
            if (mirror) row.push_back("0");
            rows.push_back(std::move(row));
        }
        if (mirror) {
            const auto [mf, mp] = ixp::aliased_mirror(p);
            for (std::size_t k = 0; k < mf.size(); ++k)
                rows.push_back({fmt(mf[k]), fmt(mp[k]), "1"});
        }
        auto f = open_out(fs::path(out_dir) / ("spectrum_" + name + ".csv"));
        ixp::write_csv(f, meta_comments(ctx), header, rows);
    };

    for (const auto& g : growth) write_one(ixp::periodogram(g, oversample), g.region_code);

    // Pooled: per-region periodograms on the common span, averaged bin-wise.
    const ixp::MonthRange common = panel.common_span();
    ixp::Periodogram pooled;
    bool first = true;
    for (const auto& s : panel.series) {
        const auto g = ixp::compute_growth(s.window(common));
        const auto p = ixp::periodogram(g, oversample);
        if (first) {
            pooled = p;
            pooled.series_id = "pooled";
            first = false;
        } else {
            for (std::size_t k = 0; k < pooled.power.size(); ++k) pooled.power[k] += p.power[k];
            pooled.variance += p.variance;
        }
    }
    const auto nr = static_cast<double>(panel.size());
    for (auto& v : pooled.power) v /= nr;
    pooled.variance /= nr;
    write_one(pooled, "pooled");
    std::cout << "spectra written for " << growth.size() << " regions + pooled\n";
}

void run_profile(const Ctx& ctx, const std::string& input, const std::string& out_dir,
                 const ixp::MonthRange& window) {
    const ixp::PricePanel panel = ixp::load_panel_file(input);
    const auto growth = ixp::growth_panel(panel);
    const ixp::MonthProfile prof = ixp::month_profile(growth, window);

    const std::vector<std::string> header = {"month", "mean_growth", "stddev", "count"};
    std::vector<std::vector<std::string>> rows;
    for (int m = 0; m < 12; ++m)
        rows.push_back({ixp::month_name(m + 1), fmt(prof.mean[m]), fmt(prof.stddev[m]),
                        std::to_string(prof.count[m])});
    auto f = open_out(fs::path(out_dir) / "profile_pooled.csv");
    ixp::write_csv(f, meta_comments(ctx), header, rows);

    json o = ixp::profile_to_json(prof, window);
    add_meta(o, ctx);
    write_json(fs::path(out_dir) / "profile_pooled.json", o);
    std::cout << "month profile over " << window.str() << " written\n";
}

void run_decompose(const Ctx& ctx, const std::string& input, const std::string& out_dir,
                   const std::string& years_arg, const std::string& region) {
    const auto colon = years_arg.find(':');
    if (colon == std::string::npos)
        throw ixp::MalformedInput("bad --years \"" + years_arg + "\" (expected YFROM:YTO)");
    const int y0 = std::stoi(years_arg.substr(0, colon));
    const int y1 = std::stoi(years_arg.substr(colon + 1));

    const ixp::PricePanel panel = ixp::load_panel_file(input);
    ixp::SeasonalDecomposition d;
    if (region.empty()) {
        const auto growth = ixp::growth_panel(panel);
        d = ixp::decompose_bilinear(growth, y0, y1);
    } else {
        d = ixp::decompose_bilinear(ixp::compute_growth(panel.require(region)), y0, y1);
    }

    {
        const std::vector<std::string> header = {"year", "f", "j"};
        std::vector<std::vector<std::string>> rows;
        for (std::size_t t = 0; t < d.years.size(); ++t)
            rows.push_back({std::to_string(d.years[t]), fmt(d.f[t]), fmt(d.j[t])});
        auto f = open_out(fs::path(out_dir) / "decompose_years.csv");
        ixp::write_csv(f, meta_comments(ctx), header, rows);
    }
    {
        const std::vector<std::string> header = {"month", "h"};
        std::vector<std::vector<std::string>> rows;
        for (int m = 0; m < 12; ++m) rows.push_back({ixp::month_name(m + 1), fmt(d.h[m])});
        auto f = open_out(fs::path(out_dir) / "decompose_pattern.csv");
        ixp::write_csv(f, meta_comments(ctx), header, rows);
    }
    json o = ixp::decomposition_to_json(d);
    add_meta(o, ctx);
    write_json(fs::path(out_dir) / "decompose.json", o);
    std::cout << (region.empty() ? std::string("pooled") : region) << " decomposition "
              << years_arg << ": residual rms " << fmt(d.residual_rms) << ", " << d.iterations
              << " sweeps" << (d.degenerate ? " [degenerate]" : "") << "\n";
}

void run_signs(const Ctx& ctx, const std::string& input, const std::string& out_dir,
               const ixp::MonthRange& window) {
    const ixp::PricePanel panel = ixp::load_panel_file(input);
    const auto growth = ixp::growth_panel(panel);
    const ixp::SignTable table = ixp::sign_table(growth, window);

    const std::vector<std::string> header = {"month", "positive_pct", "negative_pct",
                                             "sign",  "dominant_pct", "n", "ties"};
    std::vector<std::vector<std::string>> rows;
    for (int m = 0; m < 12; ++m) {
        const auto& s = table.month[m];
        rows.push_back({ixp::month_name(m + 1), fmt(100.0 * s.positive_fraction),
                        fmt(100.0 * s.negative_fraction), std::string(1, s.dominant_sign),
                        fmt(100.0 * s.dominant_fraction), std::to_string(s.n_pos + s.n_neg),
                        std::to_string(s.n_tie)});
    }
    auto f = open_out(fs::path(out_dir) / "signs.csv");
    ixp::write_csv(f, meta_comments(ctx), header, rows);

    json o = ixp::sign_table_to_json(table);
    add_meta(o, ctx);
    write_json(fs::path(out_dir) / "signs.json", o);
    std::cout << "sign table over " << window.str() << ": ";
    for (int m = 0; m < 12; ++m) std::cout << table.month[m].dominant_sign;
    std::cout << "\n";
}

void run_forecast(const Ctx& ctx, const std::string& input, const std::string& out_dir,
                  const std::string& region, const std::string& scheme_arg,
                  const std::optional<ixp::MonthRange>& train, int horizon) {
    const ixp::PricePanel panel = ixp::load_panel_file(input);
    ixp::ProfileScheme scheme;
    if (scheme_arg == "pooled") scheme = ixp::ProfileScheme::Pooled;
    else if (scheme_arg == "per-index") scheme = ixp::ProfileScheme::PerIndex;
    else throw ixp::MalformedInput("bad --scheme \"" + scheme_arg + "\" (pooled|per-index)");

    const ixp::MonthRange training =
        train.value_or(ixp::MonthRange{panel.common_span().from.next(), panel.common_span().to});

    std::vector<std::string> codes;
    if (region.empty())
        for (const auto& s : panel.series) codes.push_back(s.region_code);
    else
        codes.push_back(region);

    json all = json::array();
    for (const auto& code : codes) {
        const ixp::SeasonalForecast fc =
            ixp::forecast_levels(panel, code, scheme, training, horizon);
        const std::vector<std::string> header = {"month", "level", "low", "high"};
        std::vector<std::vector<std::string>> rows;
        for (std::size_t k = 0; k < fc.predicted_level.size(); ++k)
            rows.push_back({fc.origin.plus_months(static_cast<long>(k) + 1).str(),
                            fmt(fc.predicted_level[k]), fmt(fc.band_low[k]), fmt(fc.band_high[k])});
        auto f = open_out(fs::path(out_dir) / ("forecast_" + code + ".csv"));
        ixp::write_csv(f, meta_comments(ctx), header, rows);
        all.push_back(ixp::forecast_to_json(fc));
        std::cout << code << "  origin " << fc.origin.str() << "  " << horizon
                  << "-month forecast: " << fmt(fc.predicted_level.back()) << "  ["
                  << fmt(fc.band_low.back()) << ", " << fmt(fc.band_high.back()) << "]\n";
    }
    json o;
    add_meta(o, ctx);
    o["scheme"] = scheme_arg;
    o["training"] = training.str();
    o["forecasts"] = all;
    write_json(fs::path(out_dir) / "forecast_summary.json", o);
}

void run_evaluate(const Ctx& ctx, const std::string& input, const std::string& realized_path,
                  const std::string& out_dir, const std::optional<ixp::MonthRange>& train,
                  const std::string& from_arg, int months) {
    const ixp::PricePanel panel = ixp::load_panel_file(input);
    const ixp::PricePanel realized = ixp::load_panel_file(realized_path);
    const ixp::MonthRange training =
        train.value_or(ixp::MonthRange{panel.common_span().from.next(), panel.common_span().to});
    const ixp::MonthStamp from =
        from_arg.empty() ? panel.common_span().to.next() : parse_month_arg(from_arg);

    const auto growth = ixp::growth_panel(panel);
    const ixp::MonthProfile prof = ixp::month_profile(growth, training);
    const ixp::SignPrediction pred = ixp::predict_signs(prof, from, months);
    const auto realized_growth = ixp::growth_panel(realized);
    const ixp::SignEvaluation ev = ixp::evaluate_signs(pred, realized_growth);

    const std::vector<std::string> header = {"month", "predicted", "hits", "total", "ties"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& m : ev.per_month)
        rows.push_back({m.month.str(), std::string(1, m.predicted), std::to_string(m.hits),
                        std::to_string(m.total), std::to_string(m.ties)});
    auto f = open_out(fs::path(out_dir) / "evaluate.csv");
    ixp::write_csv(f, meta_comments(ctx), header, rows);

    json o = ixp::evaluation_to_json(ev);
    add_meta(o, ctx);
    o["training"] = training.str();
    write_json(fs::path(out_dir) / "evaluate.json", o);
    std::cout << "sign prediction: " << ev.hits << "/" << ev.total << " hits ("
              << fmt(100.0 * ev.hit_ratio) << "%)\n";
}

void run_synth(const Ctx& ctx, const std::string& config, const std::string& out_dir,
               const std::optional<std::uint64_t>& seed_override) {
    std::ifstream in(config);
    if (!in) throw ixp::MalformedInput("cannot open scenario \"" + config + "\"");
    json spec_json;
    try {
        in >> spec_json;
    } catch (const json::exception& e) {
        throw ixp::MalformedInput("scenario \"" + config + "\": " + e.what());
    }
    ixp::ScenarioSpec spec = ixp::scenario_from_json(spec_json);
    if (seed_override) spec.seed = *seed_override;

    const ixp::SynthResult result = ixp::generate(spec);
    auto f = open_out(fs::path(out_dir) / "panel.csv");
    ixp::write_panel(result.panel, f, meta_comments(ctx));
    json o = ixp::ground_truth_to_json(result.truth);
    add_meta(o, ctx);
    write_json(fs::path(out_dir) / "truth.json", o);
    std::cout << "generated " << result.panel.size() << " regions x " << spec.n_months
              << " months (seed " << spec.seed << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monthly price-index panel analysis: bubble-model fits, growth-vs-price "
                 "phase portraits, seasonal structure, and synthetic panels"};
    app.set_version_flag("--version", ixp::kVersion);
    app.set_config("--config", "", "TOML config file; explicit flags override its values");
    app.require_subcommand(1);

    Ctx ctx{join_invocation(argc, argv)};

    // common option storage
    std::string input, out_dir = ".", delimiter = "auto", window_arg, region, model;
    std::string years_arg, scheme_arg = "pooled", train_arg, from_arg, t0_arg, realized_path;
    std::vector<std::string> boundary_args;
    int oversample = 1, horizon = 12, months = 12, threads = 1, starts = 32;
    bool mirror = false;
    double alpha = 0.0, beta = 0.0, p0 = 0.0;
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", input, "panel CSV (date,<region>,... header)")->required();
    };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", out_dir, "output directory"); };
    auto add_window = [&](CLI::App* sub) {
        sub->add_option("--window", window_arg, "restrict to months YYYY-MM:YYYY-MM (inclusive)");
    };

    auto* c_ingest = app.add_subcommand("ingest", "validate a panel, write the canonical layout");
    add_input(c_ingest);
    add_out(c_ingest);
    c_ingest->add_option("--delimiter", delimiter, "auto|comma|tab (default auto)");

    auto* c_growth = app.add_subcommand("growth", "monthly log-growth per region");
    add_input(c_growth);
    add_out(c_growth);
    add_window(c_growth);

    auto* c_fit = app.add_subcommand("fit", "fit a level model per region");
    add_input(c_fit);
    add_out(c_fit);
    add_window(c_fit);
    c_fit->add_option("--model", model,
                      "power-law|exponential|tanh-crossover|exp-times-power|exp-plus-power|"
                      "matched-crossover")
        ->required();
    c_fit->add_option("--seed", seed, "multi-start sequence seed (default 0)");
    c_fit->add_option("--starts", starts, "number of multi-starts (default 32)");
    c_fit->add_option("--threads", threads, "worker threads (results are thread-count invariant)");

    auto* c_phase = app.add_subcommand("phase", "growth-vs-price points and regressions");
    add_input(c_phase);
    add_out(c_phase);
    add_window(c_phase);
    c_phase->add_option("--boundary", boundary_args,
                        "period boundary YYYY-MM (repeatable; splits the span)");

    auto* c_ode = app.add_subcommand("ode", "finite-time singularity of dp/dt = alpha p^2 - beta p");
    c_ode->add_option("--alpha", alpha, "quadratic coefficient (per price-unit month)")->required();
    c_ode->add_option("--beta", beta, "linear coefficient (per month)")->required();
    c_ode->add_option("--p0", p0, "initial price level")->required();
    c_ode->add_option("--t0", t0_arg, "calendar month of p0 (YYYY-MM), for a dated t_c");
    c_ode->add_option("--out", out_dir, "output directory (omit for stdout only)")->default_val("");

    auto* c_spectrum = app.add_subcommand("spectrum", "periodogram of monthly growth");
    add_input(c_spectrum);
    add_out(c_spectrum);
    add_window(c_spectrum);
    c_spectrum->add_option("--oversample", oversample, "zero-padding factor (default 1)");
    c_spectrum->add_flag("--mirror", mirror, "append the aliased band (6,12) cycles/yr, flagged");

    auto* c_profile = app.add_subcommand("profile", "calendar-month growth profile (pooled)");
    add_input(c_profile);
    add_out(c_profile);
    c_profile->add_option("--window", window_arg, "training months YYYY-MM:YYYY-MM")->required();

    auto* c_decompose = app.add_subcommand("decompose", "bilinear seasonal decomposition f(T)h(m)+j(T)");
    add_input(c_decompose);
    add_out(c_decompose);
    c_decompose->add_option("--years", years_arg, "complete-year range YFROM:YTO")->required();
    c_decompose->add_option("--region", region, "single region (default: pooled panel)");

    auto* c_signs = app.add_subcommand("signs", "sign table of growth increments by calendar month");
    add_input(c_signs);
    add_out(c_signs);
    c_signs->add_option("--window", window_arg, "months YYYY-MM:YYYY-MM")->required();

    auto* c_forecast = app.add_subcommand("forecast", "seasonal level forecast from month profile");
    add_input(c_forecast);
    add_out(c_forecast);
    c_forecast->add_option("--region", region, "region code (default: all regions)");
    c_forecast->add_option("--scheme", scheme_arg, "pooled|per-index (default pooled)");
    c_forecast->add_option("--train", train_arg, "training months YYYY-MM:YYYY-MM (default: common span)");
    c_forecast->add_option("--horizon", horizon, "months ahead (default 12)");

    auto* c_evaluate = app.add_subcommand("evaluate", "score predicted increment signs out of sample");
    add_input(c_evaluate);
    add_out(c_evaluate);
    c_evaluate->add_option("--realized", realized_path, "panel CSV with the realized months")->required();
    c_evaluate->add_option("--train", train_arg, "training months YYYY-MM:YYYY-MM (default: common span)");
    c_evaluate->add_option("--from", from_arg, "first predicted month (default: month after span)");
    c_evaluate->add_option("--months", months, "number of predicted months (default 12)");

    auto* c_synth = app.add_subcommand("synth", "generate a synthetic panel with ground truth");
    c_synth->add_option("--scenario", input, "scenario JSON file")->required();
    add_out(c_synth);
    c_synth->add_option("--seed", seed, "override the scenario's seed")->each([&](const std::string&) {
        seed_given = true;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::optional<ixp::MonthRange> window, train;
        if (!window_arg.empty()) window = parse_range(window_arg);
        if (!train_arg.empty()) train = parse_range(train_arg);

        if (*c_ingest) run_ingest(ctx, input, out_dir, delimiter);
        else if (*c_growth) run_growth(ctx, input, out_dir, window);
        else if (*c_fit) {
            ixp::FitOptions opts;
            opts.seed = seed;
            opts.n_starts = starts;
            opts.threads = threads;
            run_fit(ctx, input, out_dir, model, window, opts);
        } else if (*c_phase) run_phase(ctx, input, out_dir, window, boundary_args);
        else if (*c_ode) run_ode(ctx, alpha, beta, p0, t0_arg, out_dir);
        else if (*c_spectrum) run_spectrum(ctx, input, out_dir, window, oversample, mirror);
        else if (*c_profile) run_profile(ctx, input, out_dir, *window);
        else if (*c_decompose) run_decompose(ctx, input, out_dir, years_arg, region);
        else if (*c_signs) run_signs(ctx, input, out_dir, *window);
        else if (*c_forecast) run_forecast(ctx, input, out_dir, region, scheme_arg, train, horizon);
        else if (*c_evaluate) run_evaluate(ctx, input, realized_path, out_dir, train, from_arg, months);
        else if (*c_synth) run_synth(ctx, input, out_dir,
                                     seed_given ? std::optional<std::uint64_t>(seed) : std::nullopt);
        return 0;
    } catch (const ixp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
