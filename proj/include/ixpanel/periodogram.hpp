#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ixpanel/errors.hpp"
#include "ixpanel/series.hpp"
#include "ixpanel/stats.hpp"

namespace ixp {

/**
 * One-sided periodogram of a monthly growth series.
 *
 * Frequencies are in cycles per year on the grid 12k/M, k = 1..floor(M/2),
 * where M = n * oversample (zero-padding refines the grid; it adds no
 * information).  Power is on the amplitude-squared scale: an interior bin
 * holds 4|X_k|^2 / n^2, so a unit-amplitude sinusoid at a grid frequency
 * peaks at 1.0; the exact Nyquist bin (f = 6, present when M is even) holds
 * |X_k|^2 / n^2 because it has no mirror.  With that convention the
 * variance decomposition is the *weighted* sum parseval_sum() — 1/2 per
 * interior bin, 1 at Nyquist — which equals `variance` exactly when
 * oversample = 1.
 */
struct Periodogram {
    std::string series_id;          ///< region code or "pooled"
    std::vector<double> frequency;  ///< cycles per year, ascending, in (0, 6]
    std::vector<double> power;
    std::size_t n = 0;              ///< unpadded sample count
    int oversample = 1;
    double variance = 0.0;          ///< population variance of the (de-meaned) input
    bool has_nyquist = false;       ///< last bin sits exactly at f = 6

    /// Sum of power with mirror weights: equals `variance` at oversample 1.
    [[nodiscard]] double parseval_sum() const {
        double s = 0.0;
        for (std::size_t k = 0; k < power.size(); ++k) {
            const bool nyq = has_nyquist && k + 1 == power.size();
            s += nyq ? power[k] : 0.5 * power[k];
        }
        return s;
    }
};

/**
 * Direct-summation periodogram of the de-meaned growth values.  Needs at
 * least 24 observations (two full years); oversample >= 1.
 */
inline Periodogram periodogram(const GrowthSeries& g, int oversample = 1) {
    if (g.size() < 24)
        throw InsufficientData("region " + g.region_code + ": periodogram needs at least 24 growth " +
                               "observations, have " + std::to_string(g.size()));
    if (oversample < 1) throw DomainError("oversample factor must be >= 1");

    const std::size_t n = g.size();
    const std::size_t m = n * static_cast<std::size_t>(oversample);
    std::vector<double> x(g.values);
    const double mu = mean(x);
    for (double& v : x) v -= mu;

    Periodogram p;
    p.series_id = g.region_code;
    p.n = n;
    p.oversample = oversample;
    p.variance = variance_pop(g.values);
    const std::size_t kmax = m / 2;
    p.frequency.reserve(kmax);
    p.power.reserve(kmax);
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (std::size_t k = 1; k <= kmax; ++k) {
        const double w = two_pi * static_cast<double>(k) / static_cast<double>(m);
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ph = w * static_cast<double>(i);
            re += x[i] * std::cos(ph);
            im -= x[i] * std::sin(ph);
        }
        const double amp2 = (re * re + im * im) / (static_cast<double>(n) * static_cast<double>(n));
        const bool nyquist = (m % 2 == 0) && (k == kmax);
        p.frequency.push_back(12.0 * static_cast<double>(k) / static_cast<double>(m));
        p.power.push_back(nyquist ? amp2 : 4.0 * amp2);
        if (nyquist) p.has_nyquist = true;
    }
    return p;
}

/**
 * Mirror of the sub-Nyquist band into (6, 12): monthly sampling aliases a
 * true cycle at f > 6 onto 12 - f, so the mirrored band shows where
 * fast intra-year periodicities would fall.  Returns (frequency, power)
 * ascending in (6, 12); purely presentational.
 */
inline std::pair<std::vector<double>, std::vector<double>> aliased_mirror(const Periodogram& p) {
    std::vector<double> freq, power;
    for (std::size_t k = p.power.size(); k-- > 0;) {
        const bool nyq = p.has_nyquist && k + 1 == p.power.size();
        if (nyq) continue;  // f = 6 mirrors onto itself
        freq.push_back(12.0 - p.frequency[k]);
        power.push_back(p.power[k]);
    }
    return {std::move(freq), std::move(power)};
}

}  // namespace ixp
