#pragma once

#include <cmath>
#include <optional>
#include <string_view>
#include <variant>

#include "ixpanel/errors.hpp"

namespace ixp {

/**
 * The level-model family.  Time t is a fractional month serial
 * (12*year + month-1); t_c is the critical month in the same coordinate.
 * Models containing a bare exponential carry an explicit reference month
 * t_ref and evaluate e^{mu*(t - t_ref)}, keeping the exponent small and the
 * linear coefficients interpretable regardless of the calendar epoch.
 */
enum class ModelKind {
    PowerLaw,          ///< I = A + B |t_c - t|^m
    Exponential,       ///< I = a + b e^{mu (t - t_ref)}
    TanhCrossover,     ///< I = A + B tanh[(t_c - t)/tau]^m
    ExpTimesPower,     ///< I = a + b e^{mu (t - t_ref)} |t_c - t|^m
    ExpPlusPower,      ///< I = a + b e^{mu (t - t_ref)} + c |t_c - t|^m
    MatchedCrossover,  ///< exponential before t_star, power law after, C0/C1-matched
};

struct PowerLawParams {
    double A, B, m, t_c;
};

struct ExponentialParams {
    double a, b, mu, t_ref;
};

struct TanhCrossoverParams {
    double A, B, m, t_c, tau;
};

struct ExpTimesPowerParams {
    double a, b, mu, m, t_c, t_ref;
};

struct ExpPlusPowerParams {
    double a, b, mu, c, m, t_c, t_ref;
};

/**
 * Piecewise crossover: I = a + b e^{mu (t - t_star)} for t < t_star and
 * I = A + B (t_c - t)^m for t >= t_star, with level and slope matched at
 * t_star.  `make_matched` constructs (a, b) so both matching identities hold
 * exactly; the struct itself stores the raw branch parameters.
 */
struct MatchedCrossoverParams {
    double a, b, mu;     ///< exponential branch, referenced at t_star
    double A, B, m, t_c; ///< power-law branch
    double t_star;       ///< crossover month (fractional serial)
};

using FitParams = std::variant<PowerLawParams, ExponentialParams, TanhCrossoverParams,
                               ExpTimesPowerParams, ExpPlusPowerParams, MatchedCrossoverParams>;

inline ModelKind kind_of(const FitParams& p) {
    return static_cast<ModelKind>(p.index());
}

inline const char* model_name(ModelKind k) {
    switch (k) {
        case ModelKind::PowerLaw: return "power-law";
        case ModelKind::Exponential: return "exponential";
        case ModelKind::TanhCrossover: return "tanh-crossover";
        case ModelKind::ExpTimesPower: return "exp-times-power";
        case ModelKind::ExpPlusPower: return "exp-plus-power";
        case ModelKind::MatchedCrossover: return "matched-crossover";
    }
    return "?";
}

inline std::optional<ModelKind> model_from_name(std::string_view name) {
    for (ModelKind k : {ModelKind::PowerLaw, ModelKind::Exponential, ModelKind::TanhCrossover,
                        ModelKind::ExpTimesPower, ModelKind::ExpPlusPower, ModelKind::MatchedCrossover})
        if (name == model_name(k)) return k;
    return std::nullopt;
}

/**
 * |t_c - t|^m with the singular point handled: exactly at t = t_c the value
 * is 0 for m > 0, 1 for m = 0, and a SingularityError for m < 0 (the model
 * diverges there).
 */
inline double power_term(double t_c, double m, double t) {
    const double dt = t_c - t;
    if (dt == 0.0) {
        if (m < 0.0) throw SingularityError("model evaluated at its critical time t_c");
        return m == 0.0 ? 1.0 : 0.0;
    }
    return std::pow(std::abs(dt), m);
}

/// tanh[(t_c - t)/tau]^m; DomainError for negative tanh with non-integer m.
inline double tanh_term(double t_c, double tau, double m, double t) {
    const double th = std::tanh((t_c - t) / tau);
    if (th == 0.0) {
        if (m < 0.0) throw SingularityError("tanh crossover evaluated at its critical time t_c");
        return m == 0.0 ? 1.0 : 0.0;
    }
    if (th < 0.0 && m != std::floor(m))
        throw DomainError("tanh crossover undefined beyond t_c for non-integer exponent");
    return std::pow(th, m);
}

/// Model value at fractional month serial t.
inline double eval_model(const FitParams& params, double t) {
    struct Visitor {
        double t;
        double operator()(const PowerLawParams& p) const {
            return p.A + p.B * power_term(p.t_c, p.m, t);
        }
        double operator()(const ExponentialParams& p) const {
            return p.a + p.b * std::exp(p.mu * (t - p.t_ref));
        }
        double operator()(const TanhCrossoverParams& p) const {
            return p.A + p.B * tanh_term(p.t_c, p.tau, p.m, t);
        }
        double operator()(const ExpTimesPowerParams& p) const {
            return p.a + p.b * std::exp(p.mu * (t - p.t_ref)) * power_term(p.t_c, p.m, t);
        }
        double operator()(const ExpPlusPowerParams& p) const {
            return p.a + p.b * std::exp(p.mu * (t - p.t_ref)) + p.c * power_term(p.t_c, p.m, t);
        }
        double operator()(const MatchedCrossoverParams& p) const {
            if (t < p.t_star) return p.a + p.b * std::exp(p.mu * (t - p.t_star));
            return p.A + p.B * power_term(p.t_c, p.m, t);
        }
    };
    return std::visit(Visitor{t}, params);
}

/**
 * Exponential-branch curvature ratio that matches the power-law slope at
 * t_star:  r = -m (t_c - t_star)^{m-1} / mu.  With b = B r the two branches
 * have equal first derivatives at t_star.
 */
inline double matched_ratio(double mu, double t_c, double m, double t_star) {
    if (mu == 0.0) throw DomainError("matched crossover requires mu != 0");
    if (!(t_c > t_star)) throw DomainError("matched crossover requires t_c > t_star");
    return -m * std::pow(t_c - t_star, m - 1.0) / mu;
}

/**
 * Build a C0/C1-matched crossover from the power-law branch (A, B, m, t_c),
 * the exponential rate mu, and the crossover month t_star:
 *   b = B r,   a = A + B ((t_c - t_star)^m - r),   r = -m (t_c-t_star)^{m-1} / mu.
 * Level and slope matching at t_star then hold identically.
 */
inline MatchedCrossoverParams make_matched(double mu, double t_c, double m, double t_star,
                                           double A, double B) {
    const double r = matched_ratio(mu, t_c, m, t_star);
    MatchedCrossoverParams p{};
    p.mu = mu;
    p.t_c = t_c;
    p.m = m;
    p.t_star = t_star;
    p.A = A;
    p.B = B;
    p.b = B * r;
    p.a = A + B * (std::pow(t_c - t_star, m) - r);
    return p;
}

/// Finite-time-singularity diagnostic of a fitted model.
enum class Regime {
    SuperExponential,     ///< level accelerates toward a finite-time singularity at t_c
    NonSuperExponential,  ///< no singular acceleration signature
};

inline const char* regime_name(Regime r) {
    return r == Regime::SuperExponential ? "super-exponential" : "non-super-exponential";
}

/**
 * A fit is super-exponential when its power-law component accelerates toward
 * t_c: (B < 0 and 0 < m < 1) or (B > 0 and m < 0), where the coefficient c
 * plays B's role for ExpPlusPower and b does for ExpTimesPower.  The pure
 * exponential has no power-law component: NotApplicable.
 */
inline Regime classify_regime(const FitParams& params) {
    struct Visitor {
        std::pair<double, double> operator()(const PowerLawParams& p) const { return {p.B, p.m}; }
        std::pair<double, double> operator()(const ExponentialParams&) const {
            throw NotApplicable("super-exponential diagnostic undefined for the pure exponential");
        }
        std::pair<double, double> operator()(const TanhCrossoverParams& p) const { return {p.B, p.m}; }
        std::pair<double, double> operator()(const ExpTimesPowerParams& p) const { return {p.b, p.m}; }
        std::pair<double, double> operator()(const ExpPlusPowerParams& p) const { return {p.c, p.m}; }
        std::pair<double, double> operator()(const MatchedCrossoverParams& p) const { return {p.B, p.m}; }
    };
    const auto [B, m] = std::visit(Visitor{}, params);
    const bool super = (B < 0.0 && m > 0.0 && m < 1.0) || (B > 0.0 && m < 0.0);
    return super ? Regime::SuperExponential : Regime::NonSuperExponential;
}

/**
 * Earliest month in [lo, hi] where the exponential branch meets the
 * power-law branch, located by sign-change scan (1/64-month grid) plus
 * bisection to machine precision.  NoCrossoverError when the branch
 * difference never changes sign on the interval.
 */
inline double crossover_time(const ExponentialParams& exp_branch, const PowerLawParams& power_branch,
                             double lo, double hi) {
    if (!(hi > lo)) throw RangeError("crossover search needs hi > lo");
    auto diff = [&](double t) {
        return eval_model(FitParams{exp_branch}, t) - eval_model(FitParams{power_branch}, t);
    };
    const double step = 1.0 / 64.0;
    double a = lo;
    double fa = diff(a);
    if (fa == 0.0) return a;
    for (double b = lo + step; a < hi; b = std::min(b + step, hi)) {
        b = std::min(b, hi);
        const double fb = diff(b);
        if (fb == 0.0) return b;
        if ((fa < 0.0) != (fb < 0.0)) {
            // Bisect [a, b] down to rounding level.
            double x0 = a, x1 = b, f0 = fa;
            for (int it = 0; it < 200 && x1 - x0 > 1e-13 * std::max(1.0, std::abs(x0)); ++it) {
                const double mid = 0.5 * (x0 + x1);
                const double fm = diff(mid);
                if (fm == 0.0) return mid;
                if ((f0 < 0.0) != (fm < 0.0))
                    x1 = mid;
                else
                    x0 = mid, f0 = fm;
            }
            return 0.5 * (x0 + x1);
        }
        a = b;
        fa = fb;
        if (b >= hi) break;
    }
    throw NoCrossoverError("branches do not intersect on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
}

}  // namespace ixp
