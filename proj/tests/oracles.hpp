#pragma once

// Independent reference implementations used only by the tests: each one
// computes a quantity the library also computes, by a deliberately different
// method, so agreement is evidence rather than tautology.

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "ixpanel/month.hpp"

namespace oracle {

/**
 * Blow-up time of dp/dt = alpha p^2 - beta p from p(0) = p0, by adaptive
 * classical RK4 integration until p exceeds 1e9, plus the asymptotic tail
 * 1/(alpha p_end) (the remaining time once the quadratic term dominates;
 * its error is O(beta / (alpha p_end)^2), far below a micro-month here).
 * Returns a negative value when the trajectory decays instead of blowing up.
 */
inline double ode_blowup_rk4(double alpha, double beta, double p0) {
    auto f = [&](double p) { return alpha * p * p - beta * p; };
    double p = p0, t = 0.0;
    const double p_big = 1e9;
    const double t_give_up = 1e7;
    while (p < p_big) {
        if (f(p) <= 0.0 || t > t_give_up) return -1.0;  // at/below equilibrium: no singularity
        const double dt = std::min(1.0, 0.01 * p / std::abs(f(p)));
        const double k1 = f(p);
        const double k2 = f(p + 0.5 * dt * k1);
        const double k3 = f(p + 0.5 * dt * k2);
        const double k4 = f(p + dt * k3);
        p += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
    }
    return t + 1.0 / (alpha * p);
}

/// Plain bisection to ~1e-12 width; requires a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    if ((flo < 0.0) == (f(hi) < 0.0)) throw std::runtime_error("oracle::bisect: no sign change");
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Group stamped values by calendar month the pedestrian way.
struct MonthGroups {
    std::map<int, std::vector<double>> by_month;  // 1..12

    void add(ixp::MonthStamp stamp, double value) { by_month[stamp.month].push_back(value); }

    double mean(int month) const {
        const auto& v = by_month.at(month);
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    }

    double stddev_pop(int month) const {
        const auto& v = by_month.at(month);
        const double m = mean(month);
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return std::sqrt(s / static_cast<double>(v.size()));
    }

    std::size_t count(int month) const {
        auto it = by_month.find(month);
        return it == by_month.end() ? 0 : it->second.size();
    }
};

/**
 * One-sided periodogram power of a series at frequency f cycles/year,
 * straight from the defining sums over the de-meaned samples (monthly
 * sampling; interior-bin normalization 4|X|^2/n^2).
 */
inline double dft_power_at(std::span<const double> x, double f_cycles_per_year) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    const double w = 2.0 * 3.14159265358979323846 * f_cycles_per_year / 12.0;
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += (x[i] - mean) * std::cos(w * static_cast<double>(i));
        im -= (x[i] - mean) * std::sin(w * static_cast<double>(i));
    }
    return 4.0 * (re * re + im * im) / (static_cast<double>(n) * static_cast<double>(n));
}

/// Taylor series of tanh around 0, valid for small |x|.
inline double tanh_series(double x) {
    const double x2 = x * x;
    return x * (1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0 - 17.0 * x2 * x2 * x2 / 315.0);
}

/// Squared gain of the trailing 3-month mean acting on a monthly signal,
/// at frequency f cycles/year (from the filter's transfer function).
inline double ma3_gain2(double f_cycles_per_year) {
    const double w = 2.0 * 3.14159265358979323846 * f_cycles_per_year / 12.0;
    const double re = (1.0 + std::cos(w) + std::cos(2.0 * w)) / 3.0;
    const double im = (std::sin(w) + std::sin(2.0 * w)) / 3.0;
    return re * re + im * im;
}

}  // namespace oracle
