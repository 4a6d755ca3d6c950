#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ixp {

/**
 * Dense least squares  min_c || sum_j c_j * cols[j] - y ||_2  by Householder
 * QR with column pre-scaling.  Columns are scaled to unit norm before
 * factorization (coefficients are rescaled back), so the rank test is scale
 * free: a scaled diagonal entry below 1e-12 marks the column as dependent
 * and its coefficient is returned as 0 rather than amplifying noise.
 *
 * Intended for the handful of slaved linear parameters of the model family
 * (k <= 3), but correct for any k <= n.
 */
inline std::vector<double> least_squares(std::span<const std::vector<double>> cols,
                                         std::span<const double> y) {
    const std::size_t k = cols.size();
    const std::size_t n = y.size();
    std::vector<double> a(n * k);  // column-major working copy
    std::vector<double> scale(k, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += cols[j][i] * cols[j][i];
        norm = std::sqrt(norm);
        scale[j] = norm > 0.0 ? norm : 1.0;
        for (std::size_t i = 0; i < n; ++i) a[j * n + i] = cols[j][i] / scale[j];
    }
    std::vector<double> qy(y.begin(), y.end());

    std::vector<double> v(n);
    for (std::size_t j = 0; j < k && j < n; ++j) {
        // Householder vector for rows j..n-1 of column j.
        double sigma = 0.0;
        for (std::size_t i = j; i < n; ++i) sigma += a[j * n + i] * a[j * n + i];
        const double alpha = std::sqrt(sigma);
        if (alpha == 0.0) continue;  // column already zero below the diagonal
        const double ajj = a[j * n + j];
        const double beta = ajj >= 0.0 ? -alpha : alpha;
        double vnorm2 = sigma - ajj * ajj + (ajj - beta) * (ajj - beta);
        if (vnorm2 <= 0.0) continue;
        v[j] = ajj - beta;
        for (std::size_t i = j + 1; i < n; ++i) v[i] = a[j * n + i];
        a[j * n + j] = beta;
        for (std::size_t i = j + 1; i < n; ++i) a[j * n + i] = 0.0;
        const double two_over = 2.0 / vnorm2;
        for (std::size_t c = j + 1; c < k; ++c) {
            double dot = 0.0;
            for (std::size_t i = j; i < n; ++i) dot += v[i] * a[c * n + i];
            dot *= two_over;
            for (std::size_t i = j; i < n; ++i) a[c * n + i] -= dot * v[i];
        }
        double dot = 0.0;
        for (std::size_t i = j; i < n; ++i) dot += v[i] * qy[i];
        dot *= two_over;
        for (std::size_t i = j; i < n; ++i) qy[i] -= dot * v[i];
    }

    // Back substitution on the scaled R; near-zero diagonal => dependent column.
    std::vector<double> c(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        if (jj >= n) { c[jj] = 0.0; continue; }
        double rhs = qy[jj];
        for (std::size_t c2 = jj + 1; c2 < k; ++c2) rhs -= a[c2 * n + jj] * c[c2];
        const double diag = a[jj * n + jj];
        c[jj] = std::abs(diag) > 1e-12 ? rhs / diag : 0.0;
    }
    for (std::size_t j = 0; j < k; ++j) c[j] /= scale[j];
    return c;
}

}  // namespace ixp
