#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "ixpanel/month.hpp"
#include "ixpanel/panel_io.hpp"
#include "ixpanel/series.hpp"
#include "ixpanel/stats.hpp"

#include "oracles.hpp"

using namespace ixp;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// ---------------------------------------------------------------------------
// MonthStamp / MonthRange

TEST_CASE("month serial round-trips and orders like the calendar", "[month]") {
    const MonthStamp jan2005{2005, 1};
    CHECK(jan2005.serial() == 2005L * 12);
    CHECK(MonthStamp::from_serial(jan2005.serial()) == jan2005);

    // every month of a few decades round-trips
    for (long s = MonthStamp{1970, 1}.serial(); s <= MonthStamp{2030, 12}.serial(); ++s)
        CHECK(MonthStamp::from_serial(s).serial() == s);

    CHECK(MonthStamp{1983, 6} < MonthStamp{1983, 7});
    CHECK(MonthStamp{1983, 12} < MonthStamp{1984, 1});
    CHECK(MonthStamp{2000, 5} == MonthStamp{2000, 5});

    CHECK(MonthStamp{1999, 12}.next() == MonthStamp{2000, 1});
    CHECK(MonthStamp{2000, 1}.prev() == MonthStamp{1999, 12});
    CHECK(MonthStamp{2000, 3}.plus_months(25) == MonthStamp{2002, 4});
    CHECK(MonthStamp{2000, 3}.plus_months(-27) == MonthStamp{1997, 12});
}

TEST_CASE("month parse accepts YYYY-MM and nothing else", "[month]") {
    CHECK(MonthStamp::parse("2005-01") == MonthStamp{2005, 1});
    CHECK(MonthStamp::parse("1983-12") == MonthStamp{1983, 12});
    CHECK(MonthStamp::parse("0007-03") == MonthStamp{7, 3});

    CHECK_FALSE(MonthStamp::parse("2005-13").has_value());
    CHECK_FALSE(MonthStamp::parse("2005-00").has_value());
    CHECK_FALSE(MonthStamp::parse("2005").has_value());
    CHECK_FALSE(MonthStamp::parse("2005-").has_value());
    CHECK_FALSE(MonthStamp::parse("-05").has_value());
    CHECK_FALSE(MonthStamp::parse("2005-01-15").has_value());
    CHECK_FALSE(MonthStamp::parse("2005/01").has_value());
    CHECK_FALSE(MonthStamp::parse("May 2005").has_value());
    CHECK_FALSE(MonthStamp::parse("").has_value());

    // str() is the exact inverse on the parseable range
    for (int y : {1983, 2005, 2026})
        for (int m = 1; m <= 12; ++m) {
            const MonthStamp s{y, m};
            CHECK(MonthStamp::parse(s.str()) == s);
        }
    CHECK(MonthStamp{2005, 1}.str() == "2005-01");
}

TEST_CASE("year_fraction maps January to the integer year", "[month]") {
    CHECK_THAT(year_fraction(static_cast<double>(MonthStamp{2005, 1}.serial())),
               WithinAbs(2005.0, 1e-12));
    CHECK_THAT(year_fraction(static_cast<double>(MonthStamp{2005, 7}.serial())),
               WithinAbs(2005.5, 1e-12));
    CHECK(month_name(1) == std::string("Jan"));
    CHECK(month_name(12) == std::string("Dec"));
}

TEST_CASE("month ranges parse, contain, and measure inclusively", "[month]") {
    const auto r = MonthRange::parse("1983-06:2005-03");
    REQUIRE(r.has_value());
    CHECK(r->from == MonthStamp{1983, 6});
    CHECK(r->to == MonthStamp{2005, 3});
    CHECK(r->length_months() == 262);
    CHECK(r->contains(MonthStamp{1983, 6}));
    CHECK(r->contains(MonthStamp{2005, 3}));
    CHECK_FALSE(r->contains(MonthStamp{1983, 5}));
    CHECK_FALSE(r->contains(MonthStamp{2005, 4}));
    CHECK(r->str() == "1983-06:2005-03");

    CHECK_FALSE(MonthRange::parse("2005-03:1983-06").has_value());  // reversed
    CHECK_FALSE(MonthRange::parse("1983-06").has_value());
    CHECK_FALSE(MonthRange::parse("1983-06:").has_value());
    CHECK(MonthRange::parse("2000-05:2000-05")->length_months() == 1);
}

// ---------------------------------------------------------------------------
// series

namespace {

IndexSeries make_series(std::string code, MonthStamp start, std::vector<double> values) {
    IndexSeries s;
    s.region_code = std::move(code);
    s.start = start;
    s.values = std::move(values);
    return s;
}

}  // namespace

TEST_CASE("series indexing and stamps", "[series]") {
    const auto s = make_series("LV1", {2000, 11}, {100, 101, 102, 103});
    CHECK(s.size() == 4);
    CHECK(s.end() == MonthStamp{2001, 2});
    CHECK(s.stamp_at(0) == MonthStamp{2000, 11});
    CHECK(s.stamp_at(3) == MonthStamp{2001, 2});
    CHECK(s.contains(MonthStamp{2001, 1}));
    CHECK_FALSE(s.contains(MonthStamp{2001, 3}));
    CHECK(s.at(MonthStamp{2001, 1}) == 102.0);
    CHECK(s.index_of(MonthStamp{2000, 12}) == 1);
    CHECK_THROWS_AS(s.index_of(MonthStamp{2001, 3}), RangeError);
    CHECK_THROWS_WITH(s.index_of(MonthStamp{2001, 3}), ContainsSubstring("2001-03"));
}

TEST_CASE("window clamps, is idempotent, and rejects empty intersections", "[series]") {
    const auto s = make_series("LV1", {2000, 1}, {1, 2, 3, 4, 5, 6});

    const auto mid = s.window({MonthStamp{2000, 2}, MonthStamp{2000, 4}});
    CHECK(mid.start == MonthStamp{2000, 2});
    CHECK(mid.values == std::vector<double>{2, 3, 4});

    // a window wider than the data clamps to the data
    const auto wide = s.window({MonthStamp{1999, 1}, MonthStamp{2001, 12}});
    CHECK(wide.start == s.start);
    CHECK(wide.values == s.values);

    // restricting twice to the same range changes nothing
    const auto again = mid.window({MonthStamp{2000, 2}, MonthStamp{2000, 4}});
    CHECK(again.start == mid.start);
    CHECK(again.values == mid.values);

    CHECK_THROWS_AS(s.window({MonthStamp{2001, 1}, MonthStamp{2001, 6}}), RangeError);
}

TEST_CASE("growth is the log-increment stamped at the later month", "[series]") {
    const auto s = make_series("LV1", {2000, 1}, {100.0, 110.0, 99.0, 99.0});
    const GrowthSeries g = compute_growth(s);
    CHECK(g.region_code == "LV1");
    CHECK(g.start == MonthStamp{2000, 2});
    REQUIRE(g.size() == 3);
    CHECK_THAT(g.values[0], WithinAbs(std::log(110.0 / 100.0), 1e-15));
    CHECK_THAT(g.values[1], WithinAbs(std::log(99.0 / 110.0), 1e-15));
    CHECK(g.values[2] == 0.0);

    CHECK_THROWS_AS(compute_growth(make_series("X", {2000, 1}, {100.0})), InsufficientData);
    CHECK_THROWS_AS(compute_growth(make_series("X", {2000, 1}, {100.0, -1.0})), DomainError);
    CHECK_THROWS_AS(compute_growth(make_series("X", {2000, 1}, {100.0, 0.0})), DomainError);
}

TEST_CASE("levels reconstruct from cumulative growth", "[series]") {
    // property: p(t) = p(0) * exp(sum of growth) for arbitrary positive levels
    const auto s = make_series("LV1", {1995, 7},
                               {100.0, 103.2, 101.7, 108.9, 120.0, 119.99, 95.0, 140.5});
    const GrowthSeries g = compute_growth(s);
    double cum = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        cum += g.values[k];
        CHECK_THAT(s.values[k + 1], WithinRel(s.values[0] * std::exp(cum), 1e-12));
    }
}

TEST_CASE("panel lookup and spans", "[series]") {
    PricePanel panel;
    panel.series.push_back(make_series("A", {2000, 1}, {1, 2, 3, 4}));
    panel.series.push_back(make_series("B", {2000, 3}, {5, 6, 7, 8}));

    CHECK(panel.size() == 2);
    CHECK(panel.find("B") != nullptr);
    CHECK(panel.find("C") == nullptr);
    CHECK(panel.require("A").region_code == "A");
    CHECK_THROWS_AS(panel.require("C"), KeyError);

    CHECK(panel.span().str() == "2000-01:2000-06");
    CHECK(panel.common_span().str() == "2000-03:2000-04");

    PricePanel disjoint;
    disjoint.series.push_back(make_series("A", {2000, 1}, {1, 2}));
    disjoint.series.push_back(make_series("B", {2001, 1}, {1, 2}));
    CHECK(disjoint.span().str() == "2000-01:2001-02");
    CHECK_THROWS_AS(disjoint.common_span(), RangeError);

    CHECK_THROWS_AS(PricePanel{}.span(), RangeError);

    const auto growth = growth_panel(panel);
    REQUIRE(growth.size() == 2);
    CHECK(growth[0].region_code == "A");
    CHECK(growth[1].start == MonthStamp{2000, 4});
}

TEST_CASE("month profile agrees with a pedestrian group-by", "[series]") {
    // two regions, staggered starts, three-plus years
    std::vector<GrowthSeries> growth;
    {
        GrowthSeries g;
        g.region_code = "A";
        g.start = {2000, 2};
        for (int k = 0; k < 40; ++k)
            g.values.push_back(std::sin(0.37 * k) + 0.01 * k);
        growth.push_back(g);
    }
    {
        GrowthSeries g;
        g.region_code = "B";
        g.start = {2001, 7};
        for (int k = 0; k < 30; ++k)
            g.values.push_back(std::cos(0.59 * k) - 0.02 * k);
        growth.push_back(g);
    }
    const MonthRange range{{2000, 6}, {2003, 5}};

    oracle::MonthGroups groups;
    for (const auto& g : growth)
        for (std::size_t k = 0; k < g.size(); ++k)
            if (range.contains(g.stamp_at(k))) groups.add(g.stamp_at(k), g.values[k]);

    const MonthProfile p = month_profile(growth, range);
    for (int m = 1; m <= 12; ++m) {
        REQUIRE(groups.count(m) > 0);
        CHECK(p.count[m - 1] == groups.count(m));
        CHECK_THAT(p.mean[m - 1], WithinAbs(groups.mean(m), 1e-12));
        CHECK_THAT(p.stddev[m - 1], WithinAbs(groups.stddev_pop(m), 1e-12));
    }

    // series order cannot matter
    std::vector<GrowthSeries> reversed{growth[1], growth[0]};
    const MonthProfile q = month_profile(reversed, range);
    for (int m = 0; m < 12; ++m) {
        CHECK(q.count[m] == p.count[m]);
        CHECK_THAT(q.mean[m], WithinAbs(p.mean[m], 1e-15));
    }
}

TEST_CASE("month profile names the month it cannot cover", "[series]") {
    GrowthSeries g;
    g.region_code = "A";
    g.start = {2000, 1};
    g.values = {0.1, 0.2, 0.3};  // Jan..Mar only
    const std::vector<GrowthSeries> growth{g};
    CHECK_THROWS_AS(month_profile(growth, MonthRange{{2000, 1}, {2000, 12}}), InsufficientData);
    CHECK_THROWS_WITH(month_profile(growth, MonthRange{{2000, 1}, {2000, 12}}),
                      ContainsSubstring("Apr"));
}

TEST_CASE("basic sample statistics", "[series]") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    CHECK_THAT(mean(x), WithinAbs(2.5, 1e-15));
    CHECK_THAT(variance_pop(x), WithinAbs(1.25, 1e-15));
    CHECK_THAT(stddev_pop(x), WithinAbs(std::sqrt(1.25), 1e-15));

    const std::vector<double> y{2.0, 4.0, 6.0, 8.0};
    CHECK_THAT(pearson(x, y), WithinAbs(1.0, 1e-12));
    const std::vector<double> yneg{8.0, 6.0, 4.0, 2.0};
    CHECK_THAT(pearson(x, yneg), WithinAbs(-1.0, 1e-12));
    const std::vector<double> flat{5.0, 5.0, 5.0, 5.0};
    CHECK(pearson(x, flat) == 0.0);
}

// ---------------------------------------------------------------------------
// panel text I/O

TEST_CASE("panel round-trips through the canonical text layout bit for bit", "[io]") {
    PricePanel panel;
    panel.series.push_back(
        make_series("LV01", {1999, 11}, {100.0, 100.1234567890123, 99.999999999999, 101.5}));
    panel.series.push_back(make_series("LV02", {2000, 1}, {0.015625, 3.0, 1e-3}));

    std::ostringstream out;
    write_panel(panel, out, {"demo panel", "second comment"});
    const std::string text = out.str();
    CHECK_THAT(text, ContainsSubstring("# demo panel"));
    CHECK_THAT(text, ContainsSubstring("date,LV01,LV02"));

    std::istringstream in(text);
    const PricePanel back = load_panel(in);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back.series[i].region_code == panel.series[i].region_code);
        CHECK(back.series[i].start == panel.series[i].start);
        REQUIRE(back.series[i].values.size() == panel.series[i].values.size());
        for (std::size_t k = 0; k < back.series[i].values.size(); ++k)
            CHECK(back.series[i].values[k] == panel.series[i].values[k]);  // exact
    }

    // writing the reloaded panel reproduces the bytes
    std::ostringstream out2;
    write_panel(back, out2, {"demo panel", "second comment"});
    CHECK(out2.str() == text);
}

TEST_CASE("staggered coverage loads; blanks outside a span are fine", "[io]") {
    const std::string text =
        "date,A,B\n"
        "2000-01,100,\n"
        "2000-02,101,\n"
        "2000-03,102,200\n"
        "2000-04,103,202\n"
        "2000-05,,204\n";
    std::istringstream in(text);
    const PricePanel panel = load_panel(in);
    CHECK(panel.require("A").start == MonthStamp{2000, 1});
    CHECK(panel.require("A").size() == 4);
    CHECK(panel.require("B").start == MonthStamp{2000, 3});
    CHECK(panel.require("B").size() == 3);
    CHECK(panel.require("B").values == std::vector<double>{200, 202, 204});
}

TEST_CASE("tab-delimited input is auto-detected and forceable", "[io]") {
    const std::string text =
        "date\tA\tB\n"
        "2000-01\t100\t200\n"
        "2000-02\t101\t201\n";
    {
        std::istringstream in(text);
        const PricePanel panel = load_panel(in);
        CHECK(panel.require("A").values == std::vector<double>{100, 101});
        CHECK(panel.require("B").values == std::vector<double>{200, 201});
    }
    {
        std::istringstream in(text);
        const PricePanel panel = load_panel(in, '\t');
        CHECK(panel.require("B").values == std::vector<double>{200, 201});
    }
}

TEST_CASE("NA cells and comments are tolerated where blanks are", "[io]") {
    const std::string text =
        "# leading comment\n"
        "date,A\n"
        "# interior comment\n"
        "2000-01,NA\n"
        "2000-02,100\n"
        "2000-03,101\n"
        "2000-04,NaN\n";
    std::istringstream in(text);
    const PricePanel panel = load_panel(in);
    CHECK(panel.require("A").start == MonthStamp{2000, 2});
    CHECK(panel.require("A").size() == 2);
}

TEST_CASE("a hole inside a region's span raises GapError naming it", "[io]") {
    SECTION("blank cell inside the span") {
        const std::string text =
            "date,A\n"
            "2000-01,100\n"
            "2000-02,\n"
            "2000-03,102\n";
        std::istringstream in(text);
        try {
            load_panel(in);
            FAIL("expected GapError");
        } catch (const GapError& e) {
            CHECK(e.region == "A");
            CHECK(e.missing == MonthStamp{2000, 2});
            CHECK_THAT(e.what(), ContainsSubstring("2000-02"));
        }
    }
    SECTION("entire row absent from the month axis") {
        const std::string text =
            "date,A\n"
            "2000-01,100\n"
            "2000-03,102\n";  // 2000-02 never appears
        std::istringstream in(text);
        try {
            load_panel(in);
            FAIL("expected GapError");
        } catch (const GapError& e) {
            CHECK(e.region == "A");
            CHECK(e.missing == MonthStamp{2000, 2});
        }
    }
}

TEST_CASE("malformed inputs are rejected with located messages", "[io]") {
    auto load_text = [](const std::string& text) {
        std::istringstream in(text);
        return load_panel(in);
    };

    CHECK_THROWS_AS(load_text("date,A\n2000-13,1\n2000-02,2\n"), MalformedInput);
    CHECK_THROWS_WITH(load_text("date,A\n2000-13,1\n"), ContainsSubstring("2000-13"));

    CHECK_THROWS_AS(load_text("date,A\n2000-01,1\n2000-01,2\n"), MalformedInput);
    CHECK_THROWS_WITH(load_text("date,A\n2000-01,1\n2000-01,2\n"),
                      ContainsSubstring("duplicate date"));

    CHECK_THROWS_AS(load_text("date,A,A\n2000-01,1,2\n"), MalformedInput);
    CHECK_THROWS_WITH(load_text("date,A,A\n2000-01,1,2\n"),
                      ContainsSubstring("duplicate region code"));

    // unparseable cell names the line and the column's region
    CHECK_THROWS_AS(load_text("date,A,B\n2000-01,1,2\n2000-02,1,x7\n"), MalformedInput);
    CHECK_THROWS_WITH(load_text("date,A,B\n2000-01,1,2\n2000-02,1,x7\n"),
                      ContainsSubstring("line 3") && ContainsSubstring("B"));

    CHECK_THROWS_AS(load_text("date,A\n2000-01,1,9\n"), MalformedInput);  // column count
    CHECK_THROWS_AS(load_text("price,A\n2000-01,1\n"), MalformedInput);   // bad header
    CHECK_THROWS_AS(load_text(""), MalformedInput);                        // empty
    CHECK_THROWS_AS(load_text("date,A\n"), MalformedInput);                // no data rows
    CHECK_THROWS_AS(load_text("date\n2000-01\n"), MalformedInput);         // no regions

    // non-positive level is a domain problem, not a parse problem
    CHECK_THROWS_AS(load_text("date,A\n2000-01,1\n2000-02,-3\n"), DomainError);
    CHECK_THROWS_AS(load_text("date,A\n2000-01,0,\n"), MalformedInput);  // column count again

    // a region with a single value cannot form growth
    CHECK_THROWS_AS(load_text("date,A,B\n2000-01,1,5\n2000-02,2,\n"), InsufficientData);
}

TEST_CASE("load_panel_file reports an unopenable path", "[io]") {
    CHECK_THROWS_AS(load_panel_file("/nonexistent/panel.csv"), MalformedInput);
    CHECK_THROWS_WITH(load_panel_file("/nonexistent/panel.csv"),
                      ContainsSubstring("/nonexistent/panel.csv"));
}

TEST_CASE("format_double emits shortest exact decimals", "[io]") {
    for (double v : {1.0, 0.1, 1.0 / 3.0, 12345.6789, 1e-300, 6.62607015e-34, -0.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(100.0) == "100");
    CHECK(format_double(0.5) == "0.5");
}
