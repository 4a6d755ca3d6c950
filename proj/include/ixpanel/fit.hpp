#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ixpanel/errors.hpp"
#include "ixpanel/linfit.hpp"
#include "ixpanel/models.hpp"
#include "ixpanel/rng.hpp"
#include "ixpanel/series.hpp"
#include "ixpanel/simplex.hpp"

namespace ixp {

struct FitOptions {
    int n_starts = 32;             ///< quasi-random multi-start count
    int max_evals_per_start = 2000;
    /// Simplex convergence, natural parameter units.  Tight enough that the
    /// stiffest direction (an exponential rate moves the curve by ~1e3 units
    /// per unit mu) still resolves noiseless data to rms well below 1e-8.
    double diameter_tol = 1e-12;
    std::uint64_t seed = 0;        ///< offsets the Halton start sequence
    int threads = 1;               ///< concurrent starts; results are thread-count invariant
    double tc_horizon = 240.0;     ///< t_c searched in (window end, end + horizon] months
    double mu_bound = 0.3;         ///< |mu| bound, per month
    double tau_max = 600.0;        ///< tanh crossover timescale upper bound, months
};

struct FitResult {
    FitParams params;
    double rms = 0.0;              ///< sqrt(mean squared residual) of `params` on the window
    MonthRange window;             ///< actual fitted range (request clamped to data)
    std::size_t n_points = 0;
    int n_starts = 0;
    bool converged = false;        ///< the selected start met the simplex tolerance
    std::string region_code;
    std::vector<double> start_rms; ///< per-start achieved rms, in start order
};

/// Degrees of freedom of each model (matching constraints already deducted).
inline int free_param_count(ModelKind k) {
    switch (k) {
        case ModelKind::PowerLaw: return 4;
        case ModelKind::Exponential: return 3;
        case ModelKind::TanhCrossover: return 5;
        case ModelKind::ExpTimesPower: return 5;
        case ModelKind::ExpPlusPower: return 6;
        case ModelKind::MatchedCrossover: return 6;
    }
    return 0;
}

/// Root-mean-square residual of a parameterized model on sampled data.
inline double rms_of(const FitParams& params, std::span<const double> times,
                     std::span<const double> values) {
    double sse = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double d = values[i] - eval_model(params, times[i]);
        sse += d * d;
    }
    return std::sqrt(sse / static_cast<double>(times.size()));
}

namespace detail {

/// Nonlinear-parameter layout per model kind (order matters; see nl_box).
///   PowerLaw        [t_c, m]
///   Exponential     [mu]
///   TanhCrossover   [t_c, m, tau]
///   ExpTimesPower   [mu, t_c, m]
///   ExpPlusPower    [mu, t_c, m]
///   MatchedCrossover[mu, t_c, m, t_star]
struct NlBox {
    int dim = 0;
    std::array<double, 4> lo{}, hi{};
    std::array<double, 4> excl{};  ///< forbidden half-width around 0 (ill-conditioning guards)
    int tc_index = -1;             ///< which coordinate is t_c (tie-breaking), -1 if none
};

inline NlBox nl_box(ModelKind kind, double t_first, double t_last, const FitOptions& o) {
    NlBox b;
    const double tc_lo = t_last + 1.0;
    const double tc_hi = t_last + o.tc_horizon;
    switch (kind) {
        case ModelKind::PowerLaw:
            b = {2, {tc_lo, -2.0}, {tc_hi, 2.0}, {0.0, 1e-4}, 0};
            break;
        case ModelKind::Exponential:
            b = {1, {-o.mu_bound}, {o.mu_bound}, {1e-6}, -1};
            break;
        case ModelKind::TanhCrossover:
            b = {3, {tc_lo, -2.0, 0.01}, {tc_hi, 2.0, o.tau_max}, {0.0, 1e-4, 0.0}, 0};
            break;
        case ModelKind::ExpTimesPower:
        case ModelKind::ExpPlusPower:
            b = {3, {-o.mu_bound, tc_lo, -2.0}, {o.mu_bound, tc_hi, 2.0}, {1e-6, 0.0, 1e-4}, 1};
            break;
        case ModelKind::MatchedCrossover:
            b = {4,
                 {-o.mu_bound, tc_lo, -2.0, t_first + 3.0},
                 {o.mu_bound, tc_hi, 2.0, t_last - 3.0},
                 {1e-6, 0.0, 1e-4, 0.0},
                 1};
            break;
    }
    return b;
}

/// Box/exclusion-strip violation magnitude; 0 inside the feasible region.
inline double box_violation(const NlBox& b, std::span<const double> x) {
    double v = 0.0;
    for (int d = 0; d < b.dim; ++d) {
        if (x[d] < b.lo[d]) v += b.lo[d] - x[d];
        if (x[d] > b.hi[d]) v += x[d] - b.hi[d];
        if (b.excl[d] > 0.0 && std::abs(x[d]) < b.excl[d]) v += b.excl[d] - std::abs(x[d]);
    }
    return v;
}

}  // namespace detail

/**
 * Design columns of the slaved linear subproblem at fixed nonlinear
 * parameters `nl` (layout per detail::NlBox).  Column 0 is the constant;
 * the exponential reference month is times.front() (t_star for the matched
 * crossover).  Exposed so tests can verify the least-squares stationarity
 * of the slaved solve directly.
 */
inline std::vector<std::vector<double>> model_basis(ModelKind kind, std::span<const double> nl,
                                                    std::span<const double> times) {
    const std::size_t n = times.size();
    const double t_ref = times.empty() ? 0.0 : times.front();
    std::vector<std::vector<double>> cols;
    cols.emplace_back(n, 1.0);
    auto add = [&]() -> std::vector<double>& {
        cols.emplace_back(n);
        return cols.back();
    };
    switch (kind) {
        case ModelKind::PowerLaw: {
            auto& c = add();
            for (std::size_t i = 0; i < n; ++i) c[i] = power_term(nl[0], nl[1], times[i]);
            break;
        }
        case ModelKind::Exponential: {
            auto& c = add();
            for (std::size_t i = 0; i < n; ++i) c[i] = std::exp(nl[0] * (times[i] - t_ref));
            break;
        }
        case ModelKind::TanhCrossover: {
            auto& c = add();
            for (std::size_t i = 0; i < n; ++i) c[i] = tanh_term(nl[0], nl[2], nl[1], times[i]);
            break;
        }
        case ModelKind::ExpTimesPower: {
            auto& c = add();
            for (std::size_t i = 0; i < n; ++i)
                c[i] = std::exp(nl[0] * (times[i] - t_ref)) * power_term(nl[1], nl[2], times[i]);
            break;
        }
        case ModelKind::ExpPlusPower: {
            auto& e = add();
            for (std::size_t i = 0; i < n; ++i) e[i] = std::exp(nl[0] * (times[i] - t_ref));
            auto& p = add();
            for (std::size_t i = 0; i < n; ++i) p[i] = power_term(nl[1], nl[2], times[i]);
            break;
        }
        case ModelKind::MatchedCrossover: {
            // phi(t) continues the power-law branch below t_star by the
            // slope-matched exponential; linear coefficients are then (A, B).
            const double mu = nl[0], t_c = nl[1], m = nl[2], t_star = nl[3];
            const double r = matched_ratio(mu, t_c, m, t_star);
            const double p_star = std::pow(t_c - t_star, m);
            auto& c = add();
            for (std::size_t i = 0; i < n; ++i) {
                if (times[i] < t_star)
                    c[i] = p_star + r * (std::exp(mu * (times[i] - t_star)) - 1.0);
                else
                    c[i] = power_term(t_c, m, times[i]);
            }
            break;
        }
    }
    return cols;
}

namespace detail {

/// Assemble full model parameters from nonlinear coordinates + slaved coefficients.
inline FitParams assemble_params(ModelKind kind, std::span<const double> nl,
                                 std::span<const double> c, double t_ref) {
    switch (kind) {
        case ModelKind::PowerLaw: return PowerLawParams{c[0], c[1], nl[1], nl[0]};
        case ModelKind::Exponential: return ExponentialParams{c[0], c[1], nl[0], t_ref};
        case ModelKind::TanhCrossover: return TanhCrossoverParams{c[0], c[1], nl[1], nl[0], nl[2]};
        case ModelKind::ExpTimesPower:
            return ExpTimesPowerParams{c[0], c[1], nl[0], nl[2], nl[1], t_ref};
        case ModelKind::ExpPlusPower:
            return ExpPlusPowerParams{c[0], c[1], nl[0], c[2], nl[2], nl[1], t_ref};
        case ModelKind::MatchedCrossover:
            return make_matched(nl[0], nl[1], nl[2], nl[3], c[0], c[1]);
    }
    throw Error("unreachable model kind");
}

}  // namespace detail

/**
 * Fit one model of the family to a window of a level series.
 *
 * Strategy: quasi-random (Halton) multi-start Nelder–Mead over the model's
 * nonlinear parameters; at every objective evaluation the linear parameters
 * are slaved by an exact least-squares solve, and the objective is the rms
 * of the fully assembled model via the public eval_model path — so the
 * reported rms reproduces exactly on re-evaluation.  Starts are mutually
 * independent, which makes the result invariant to the thread count.  Among
 * starts the smallest rms wins; ties within 1e-12 go to the smaller t_c
 * (first start encountered, for the t_c-free exponential).
 *
 * Throws RangeError (window misses the data) and InsufficientData (fewer
 * points than free parameters + 2; the matched crossover needs >= 10).
 * When no start meets the simplex tolerance the best effort is still
 * returned, flagged converged = false.
 */
inline FitResult fit_model(const IndexSeries& series, ModelKind kind, const MonthRange& window,
                           const FitOptions& opts = {}) {
    const IndexSeries sub = series.window(window);
    validate_levels(sub);
    const std::size_t n = sub.size();
    const std::size_t min_points =
        kind == ModelKind::MatchedCrossover ? 10 : static_cast<std::size_t>(free_param_count(kind)) + 2;
    if (n < min_points)
        throw InsufficientData("region " + series.region_code + ": " + model_name(kind) +
                               " fit needs at least " + std::to_string(min_points) +
                               " points in window, have " + std::to_string(n));

    std::vector<double> times(n), values(sub.values);
    for (std::size_t i = 0; i < n; ++i)
        times[i] = static_cast<double>(sub.start.serial() + static_cast<long>(i));
    const double t_first = times.front(), t_last = times.back();
    const detail::NlBox box = detail::nl_box(kind, t_first, t_last, opts);

    auto objective = [&](std::span<const double> x) -> double {
        const double viol = detail::box_violation(box, x);
        if (viol > 0.0) return 1e100 * (1.0 + viol);
        const auto cols = model_basis(kind, x, times);
        for (const auto& col : cols)
            for (double v : col)
                if (!std::isfinite(v)) return 1e100;
        const auto coeffs = least_squares(cols, values);
        for (double v : coeffs)
            if (!std::isfinite(v)) return 1e100;
        const FitParams p = detail::assemble_params(kind, x, coeffs, t_first);
        const double r = rms_of(p, times, values);
        return std::isfinite(r) ? r : 1e100;
    };

    struct Start {
        std::vector<double> nl;
        double rms = std::numeric_limits<double>::infinity();
        bool converged = false;
    };
    std::vector<Start> outcomes(static_cast<std::size_t>(opts.n_starts));
    const std::uint64_t offset = 1 + (opts.seed % 1000003ULL) * 64ULL;

    auto run_start = [&](int i) {
        std::vector<double> x0(static_cast<std::size_t>(box.dim));
        std::vector<double> step(static_cast<std::size_t>(box.dim));
        for (int d = 0; d < box.dim; ++d) {
            const double u = halton(offset + static_cast<std::uint64_t>(i), d);
            x0[static_cast<std::size_t>(d)] = box.lo[d] + u * (box.hi[d] - box.lo[d]);
            step[static_cast<std::size_t>(d)] = 0.08 * (box.hi[d] - box.lo[d]);
        }
        SimplexOptions sopt;
        sopt.max_evals = opts.max_evals_per_start;
        sopt.diameter_tol = opts.diameter_tol;
        const SimplexResult r = nelder_mead(objective, x0, step, sopt);
        outcomes[static_cast<std::size_t>(i)] = {r.x, r.fmin, r.converged};
    };

    if (opts.threads <= 1) {
        for (int i = 0; i < opts.n_starts; ++i) run_start(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int nt = std::min(opts.threads, opts.n_starts);
        pool.reserve(static_cast<std::size_t>(nt));
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < opts.n_starts; i = next.fetch_add(1)) run_start(i);
            });
        for (auto& th : pool) th.join();
    }

    // Select: minimum rms; ties within 1e-12 resolved toward the smaller t_c.
    int best = -1;
    for (int i = 0; i < opts.n_starts; ++i) {
        const auto& o = outcomes[static_cast<std::size_t>(i)];
        if (!std::isfinite(o.rms) || o.rms >= 1e99) continue;
        if (best < 0) { best = i; continue; }
        const auto& b = outcomes[static_cast<std::size_t>(best)];
        if (o.rms < b.rms - 1e-12) {
            best = i;
        } else if (o.rms <= b.rms + 1e-12 && box.tc_index >= 0 &&
                   o.nl[static_cast<std::size_t>(box.tc_index)] <
                       b.nl[static_cast<std::size_t>(box.tc_index)]) {
            best = i;
        }
    }
    if (best < 0)
        throw Error("region " + series.region_code + ": " + model_name(kind) +
                    " fit produced no finite objective value");

    const auto& sel = outcomes[static_cast<std::size_t>(best)];
    const auto cols = model_basis(kind, sel.nl, times);
    const auto coeffs = least_squares(cols, values);

    FitResult result;
    result.params = detail::assemble_params(kind, sel.nl, coeffs, t_first);
    result.rms = rms_of(result.params, times, values);
    result.window = {sub.start, sub.end()};
    result.n_points = n;
    result.n_starts = opts.n_starts;
    result.converged = sel.converged;
    result.region_code = series.region_code;
    result.start_rms.reserve(outcomes.size());
    for (const auto& o : outcomes) result.start_rms.push_back(o.rms);
    return result;
}

/// The piecewise C0/C1 crossover fit; equivalent to fit_model(.., MatchedCrossover, ..).
inline FitResult fit_matched_crossover(const IndexSeries& series, const MonthRange& window,
                                       const FitOptions& opts = {}) {
    return fit_model(series, ModelKind::MatchedCrossover, window, opts);
}

}  // namespace ixp
