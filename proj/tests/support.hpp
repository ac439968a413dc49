#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "ncwave/lax.hpp"
#include "ncwave/ncalgebra.hpp"

namespace testsupport {

using ncwave::ComplexMatrix;
using ncwave::cplx;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20241018);
    return g;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c, double scale = 1.0) {
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(uniform(-scale, scale), uniform(-scale, scale));
    return m;
}

// Diagonally boosted, so comfortably invertible.
inline ComplexMatrix well_conditioned(std::size_t n) {
    ComplexMatrix m = random_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += cplx(static_cast<double>(n) + 1.0, 0.0);
    return m;
}

// Laplace expansion along the first row; exponential cost, fine up to 7x7.
inline cplx cofactor_det(const std::vector<std::vector<cplx>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    cplx det = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<cplx>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<cplx> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            minor.push_back(row);
        }
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        det += sign * a[0][j] * cofactor_det(minor);
    }
    return det;
}

inline std::vector<std::vector<cplx>> to_rows(const ComplexMatrix& m) {
    std::vector<std::vector<cplx>> r(m.rows(), std::vector<cplx>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
    return r;
}

inline std::vector<std::vector<cplx>> delete_row_col(const std::vector<std::vector<cplx>>& a,
                                                      std::size_t i, std::size_t j) {
    std::vector<std::vector<cplx>> out;
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (r == i) continue;
        std::vector<cplx> row;
        for (std::size_t c = 0; c < a.size(); ++c)
            if (c != j) row.push_back(a[r][c]);
        out.push_back(row);
    }
    return out;
}

inline double rel_err(cplx a, cplx b) {
    return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b)));
}

inline ncwave::FieldGrid sample(const std::function<ComplexMatrix(double, double)>& f, ncwave::Axis x,
                                ncwave::Axis t, std::size_t m) {
    using ncwave::FieldMode;
    ncwave::FieldGrid g(x, t, m, m == 1 ? FieldMode::commutative : FieldMode::noncommutative);
    for (std::size_t it = 0; it < t.count; ++it)
        for (std::size_t ix = 0; ix < x.count; ++ix) g.values[g.index(it, ix)] = f(x.at(ix), t.at(it));
    return g;
}

}  // namespace testsupport
