#pragma once

#include <cmath>
#include <optional>

#include "ixpanel/errors.hpp"
#include "ixpanel/month.hpp"

namespace ixp {

/**
 * Finite-time singularity of  dp/dt = alpha p^2 - beta p  started at p(0) = p0.
 *
 * The equation has the closed-form blow-up time
 *     t_c = (1/beta) * ln[ (alpha p0) / (alpha p0 - beta) ]
 * reached only from initial conditions above the unstable equilibrium
 * beta/alpha; at or below it the solution decays toward 0 and no
 * singularity exists (nullopt).  Units: months, with alpha per
 * (price-unit * month) and beta per month.
 *
 * Throws DomainError for alpha <= 0, beta <= 0, or p0 <= 0.
 */
inline std::optional<double> ode_singularity_months(double alpha, double beta, double p0) {
    if (!(alpha > 0.0)) throw DomainError("ode: alpha must be positive");
    if (!(beta > 0.0)) throw DomainError("ode: beta must be positive");
    if (!(p0 > 0.0)) throw DomainError("ode: initial price must be positive");
    const double q = alpha * p0 / beta;  // p0 relative to the equilibrium beta/alpha
    if (q <= 1.0) return std::nullopt;
    return std::log(q / (q - 1.0)) / beta;
}

/// Same singularity as a fractional month serial, from a start month t0.
inline std::optional<double> ode_singularity_serial(double alpha, double beta, double p0,
                                                    MonthStamp t0) {
    const auto dt = ode_singularity_months(alpha, beta, p0);
    if (!dt) return std::nullopt;
    return static_cast<double>(t0.serial()) + *dt;
}

}  // namespace ixp
