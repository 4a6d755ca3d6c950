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

/**
 * Bilinear seasonal decomposition of monthly growth:
 *     g(year T, month m) ≈ f(T) * h(m) + j(T)
 * with the gauge fixed after convergence: mean(h) = 0, sum(h^2) = 12, and
 * h(May) >= 0.  (The model is invariant under f,h rescaling and under
 * shifting a constant from h into j; the gauge makes the factors unique.)
 */
struct SeasonalDecomposition {
    std::vector<int> years;               ///< consecutive calendar years covered
    std::vector<double> f;                ///< per-year seasonal amplitude
    std::vector<double> j;                ///< per-year baseline growth
    std::array<double, 12> h{};           ///< calendar-month pattern (index 0 = January)
    std::vector<std::array<double, 12>> residuals;  ///< cell - (f h + j), per year
    double residual_rms = 0.0;            ///< weighted rms of the residuals
    int iterations = 0;                   ///< full alternating sweeps executed
    bool degenerate = false;              ///< input had (numerically) no variance
    std::vector<double> cost_history;     ///< weighted SSE: initial, then after every half-step
};

/**
 * Impose the gauge in place: shift mean(h) into j, scale h to sum of
 * squares 12 (f absorbs the inverse), and flip signs so h[4] (May) is
 * non-negative.  The modeled surface f h + j is unchanged.
 */
inline void normalize_decomposition(std::span<double> f, std::span<double, 12> h,
                                    std::span<double> j) {
    double hm = 0.0;
    for (double v : h) hm += v;
    hm /= 12.0;
    for (std::size_t t = 0; t < f.size(); ++t) j[t] += f[t] * hm;
    for (double& v : h) v -= hm;
    double ss = 0.0;
    for (double v : h) ss += v * v;
    const double scale = std::sqrt(ss / 12.0);
    if (scale > 0.0) {
        for (double& v : h) v /= scale;
        for (double& v : f) v *= scale;
    }
    if (h[4] < 0.0) {
        for (double& v : h) v = -v;
        for (double& v : f) v = -v;
    }
}

/**
 * Weighted alternating least squares on the year x month cell grid.  Pooling
 * a panel reduces to exactly this: minimizing the disaggregated squared
 * error over regions equals minimizing the cell-count-weighted error of the
 * per-cell means, so `cells` are mean growths and `weights` observation
 * counts.  Every half-step is an exact least-squares block update, so the
 * recorded cost sequence is non-increasing.
 *
 * Requires every cell to carry weight > 0 and at least 2 years.
 */
inline SeasonalDecomposition decompose_bilinear_cells(
    std::vector<int> years, const std::vector<std::array<double, 12>>& cells,
    const std::vector<std::array<double, 12>>& weights) {
    const std::size_t ny = years.size();
    if (ny < 2)
        throw InsufficientData("bilinear decomposition needs at least 2 complete years, have " +
                               std::to_string(ny));

    SeasonalDecomposition d;
    d.years = std::move(years);
    d.f.assign(ny, 1.0);
    d.j.assign(ny, 0.0);

    // Weighted grand mean/variance: degenerate (constant) input short-circuits.
    double sw = 0.0, swg = 0.0;
    for (std::size_t t = 0; t < ny; ++t)
        for (int m = 0; m < 12; ++m) {
            sw += weights[t][m];
            swg += weights[t][m] * cells[t][m];
        }
    const double grand = swg / sw;
    double wvar = 0.0;
    for (std::size_t t = 0; t < ny; ++t)
        for (int m = 0; m < 12; ++m)
            wvar += weights[t][m] * (cells[t][m] - grand) * (cells[t][m] - grand);
    wvar /= sw;

    auto cost = [&]() {
        double c = 0.0;
        for (std::size_t t = 0; t < ny; ++t)
            for (int m = 0; m < 12; ++m) {
                const double r = cells[t][m] - (d.f[t] * d.h[m] + d.j[t]);
                c += weights[t][m] * r * r;
            }
        return c;
    };

    auto finish_degenerate = [&]() {
        d.degenerate = true;
        d.f.assign(ny, 0.0);
        d.h.fill(0.0);
        for (std::size_t t = 0; t < ny; ++t) {
            double swt = 0.0, swgt = 0.0;
            for (int m = 0; m < 12; ++m) {
                swt += weights[t][m];
                swgt += weights[t][m] * cells[t][m];
            }
            d.j[t] = swt > 0.0 ? swgt / swt : 0.0;
        }
        d.cost_history.push_back(cost());
    };

    if (wvar <= 1e-28 * (1.0 + grand * grand)) {
        finish_degenerate();
    } else {
        // Initial factors: year means for j, de-meaned column means for h.
        for (std::size_t t = 0; t < ny; ++t) {
            double swt = 0.0, swgt = 0.0;
            for (int m = 0; m < 12; ++m) {
                swt += weights[t][m];
                swgt += weights[t][m] * cells[t][m];
            }
            d.j[t] = swgt / swt;
        }
        std::array<double, 12> col{};
        for (int m = 0; m < 12; ++m) {
            double swm = 0.0, swgm = 0.0;
            for (std::size_t t = 0; t < ny; ++t) {
                swm += weights[t][m];
                swgm += weights[t][m] * cells[t][m];
            }
            col[m] = swgm / swm;
        }
        double colmean = 0.0;
        for (double v : col) colmean += v;
        colmean /= 12.0;
        for (int m = 0; m < 12; ++m) d.h[m] = col[m] - colmean;

        double prev = cost();
        d.cost_history.push_back(prev);
        for (int sweep = 0; sweep < 500; ++sweep) {
            // Half-step A: per-year exact 2-parameter solve for (f, j) given h.
            for (std::size_t t = 0; t < ny; ++t) {
                double Sw = 0.0, Swh = 0.0, Swhh = 0.0, Swg = 0.0, Swgh = 0.0;
                for (int m = 0; m < 12; ++m) {
                    const double w = weights[t][m];
                    Sw += w;
                    Swh += w * d.h[m];
                    Swhh += w * d.h[m] * d.h[m];
                    Swg += w * cells[t][m];
                    Swgh += w * cells[t][m] * d.h[m];
                }
                const double det = Sw * Swhh - Swh * Swh;
                if (det > 1e-300) {
                    d.f[t] = (Sw * Swgh - Swh * Swg) / det;
                    d.j[t] = (Swhh * Swg - Swh * Swgh) / det;
                } else {
                    d.f[t] = 0.0;
                    d.j[t] = Swg / Sw;
                }
            }
            d.cost_history.push_back(cost());
            // Half-step B: per-month exact 1-parameter solve for h given (f, j).
            for (int m = 0; m < 12; ++m) {
                double num = 0.0, den = 0.0;
                for (std::size_t t = 0; t < ny; ++t) {
                    const double w = weights[t][m];
                    num += w * d.f[t] * (cells[t][m] - d.j[t]);
                    den += w * d.f[t] * d.f[t];
                }
                d.h[m] = den > 1e-300 ? num / den : 0.0;
            }
            const double cur = cost();
            d.cost_history.push_back(cur);
            d.iterations = sweep + 1;
            if (prev - cur <= 1e-12 * std::max(prev, 1e-300)) break;
            prev = cur;
        }

        double hss = 0.0;
        for (double v : d.h) hss += v * v;
        if (hss <= 1e-24) {
            finish_degenerate();
        } else {
            normalize_decomposition(d.f, std::span<double, 12>(d.h), d.j);
        }
    }

    d.residuals.resize(ny);
    double sse = 0.0;
    for (std::size_t t = 0; t < ny; ++t)
        for (int m = 0; m < 12; ++m) {
            d.residuals[t][m] = cells[t][m] - (d.f[t] * d.h[m] + d.j[t]);
            sse += weights[t][m] * d.residuals[t][m] * d.residuals[t][m];
        }
    d.residual_rms = std::sqrt(sse / sw);
    return d;
}

namespace detail {

inline SeasonalDecomposition decompose_span(std::span<const GrowthSeries> growth, int year_from,
                                            int year_to) {
    if (year_to < year_from) throw RangeError("bilinear decomposition: year_to < year_from");
    const std::size_t ny = static_cast<std::size_t>(year_to - year_from + 1);
    std::vector<int> years(ny);
    for (std::size_t t = 0; t < ny; ++t) years[t] = year_from + static_cast<int>(t);
    std::vector<std::array<double, 12>> sum(ny), cnt(ny);
    for (auto& a : sum) a.fill(0.0);
    for (auto& a : cnt) a.fill(0.0);
    for (const auto& g : growth) {
        if (g.empty()) continue;
        const long lo = std::max(MonthStamp{year_from, 1}.serial(), g.start.serial());
        const long hi = std::min(MonthStamp{year_to, 12}.serial(), g.end().serial());
        for (long s = lo; s <= hi; ++s) {
            const MonthStamp st = MonthStamp::from_serial(s);
            const std::size_t t = static_cast<std::size_t>(st.year - year_from);
            sum[t][st.month - 1] += g.values[static_cast<std::size_t>(s - g.start.serial())];
            cnt[t][st.month - 1] += 1.0;
        }
    }
    std::vector<std::array<double, 12>> cells(ny);
    for (std::size_t t = 0; t < ny; ++t)
        for (int m = 0; m < 12; ++m) {
            if (cnt[t][m] == 0.0)
                throw InsufficientData("bilinear decomposition: no growth observation for " +
                                       MonthStamp{years[t], m + 1}.str());
            cells[t][m] = sum[t][m] / cnt[t][m];
        }
    return decompose_bilinear_cells(std::move(years), cells, cnt);
}

}  // namespace detail

/// Decomposition of one region's growth over complete years [year_from, year_to].
inline SeasonalDecomposition decompose_bilinear(const GrowthSeries& g, int year_from, int year_to) {
    return detail::decompose_span(std::span<const GrowthSeries>(&g, 1), year_from, year_to);
}

/**
 * Pooled decomposition of a panel's growth: minimizes the squared error
 * summed over every region's observations (implemented as count-weighted
 * ALS on the cell means, which is algebraically the same problem).
 */
inline SeasonalDecomposition decompose_bilinear(std::span<const GrowthSeries> growth, int year_from,
                                                int year_to) {
    return detail::decompose_span(growth, year_from, year_to);
}

}  // namespace ixp
