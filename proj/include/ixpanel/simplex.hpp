#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ixp {

struct SimplexOptions {
    int max_evals = 2000;        ///< budget of objective evaluations
    double diameter_tol = 1e-9;  ///< convergence: max vertex distance from best, per coordinate, natural units
};

struct SimplexResult {
    std::vector<double> x;
    double fmin = 0.0;
    int evals = 0;
    bool converged = false;
};

/**
 * Nelder–Mead downhill simplex with standard coefficients (reflect 1,
 * expand 2, contract 1/2, shrink 1/2).  Convergence is declared when every
 * vertex lies within diameter_tol of the best vertex in every coordinate
 * (measured in the caller's natural parameter units), or when the function
 * spread across the simplex is at rounding level.  Bounds, if any, are the
 * caller's job: return a large penalty from `f` outside the feasible box.
 */
template <class F>
SimplexResult nelder_mead(F&& f, std::span<const double> x0, std::span<const double> step,
                          const SimplexOptions& opt = {}) {
    const std::size_t n = x0.size();
    struct Vertex {
        std::vector<double> x;
        double fx;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(std::span<const double>(x));
    };

    {
        std::vector<double> base(x0.begin(), x0.end());
        simplex.push_back({base, eval(base)});
        for (std::size_t d = 0; d < n; ++d) {
            std::vector<double> v = base;
            v[d] += step[d] != 0.0 ? step[d] : 1e-3;
            simplex.push_back({v, eval(v)});
        }
    }

    auto by_f = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };
    std::sort(simplex.begin(), simplex.end(), by_f);

    auto diameter = [&]() {
        double d = 0.0;
        for (std::size_t v = 1; v <= n; ++v)
            for (std::size_t k = 0; k < n; ++k)
                d = std::max(d, std::abs(simplex[v].x[k] - simplex[0].x[k]));
        return d;
    };

    bool converged = false;
    while (evals < opt.max_evals) {
        if (diameter() < opt.diameter_tol ||
            simplex[n].fx - simplex[0].fx <= 1e-14 * (1.0 + std::abs(simplex[0].fx))) {
            converged = true;
            break;
        }
        // Centroid of all but the worst vertex.
        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[v].x[k];
        for (std::size_t k = 0; k < n; ++k) centroid[k] /= static_cast<double>(n);

        auto along = [&](double coeff) {
            std::vector<double> x(n);
            for (std::size_t k = 0; k < n; ++k)
                x[k] = centroid[k] + coeff * (centroid[k] - simplex[n].x[k]);
            return x;
        };

        std::vector<double> xr = along(1.0);
        const double fr = eval(xr);
        if (fr < simplex[0].fx) {
            std::vector<double> xe = along(2.0);
            const double fe = eval(xe);
            if (fe < fr)
                simplex[n] = {std::move(xe), fe};
            else
                simplex[n] = {std::move(xr), fr};
        } else if (fr < simplex[n - 1].fx) {
            simplex[n] = {std::move(xr), fr};
        } else {
            // Contract toward the better of (worst, reflected).
            const bool outside = fr < simplex[n].fx;
            std::vector<double> xc = along(outside ? 0.5 : -0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, simplex[n].fx)) {
                simplex[n] = {std::move(xc), fc};
            } else {
                // Shrink toward the best vertex.
                for (std::size_t v = 1; v <= n; ++v) {
                    for (std::size_t k = 0; k < n; ++k)
                        simplex[v].x[k] = simplex[0].x[k] + 0.5 * (simplex[v].x[k] - simplex[0].x[k]);
                    simplex[v].fx = eval(simplex[v].x);
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), by_f);
    }

    return {simplex[0].x, simplex[0].fx, evals, converged};
}

}  // namespace ixp
