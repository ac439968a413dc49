#include "quasidet.hpp"

#include <string>
#include <vector>

#include "error.hpp"

namespace ncwave {

namespace {

std::string point_name(ExpansionPoint p) {
    return "(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
}

}  // namespace

ComplexMatrix quasideterminant_bordered(const ComplexMatrix& a, const ComplexMatrix& b,
                                        const ComplexMatrix& c, const ComplexMatrix& d) {
    if (!a.square() || b.rows() != a.rows() || c.cols() != a.cols() || d.rows() != c.rows() ||
        d.cols() != b.cols())
        throw DimensionError("quasideterminant_bordered: nonconforming blocks");
    return d - c * solve(a, b);
}

ComplexMatrix quasideterminant(const BlockMatrix& m, ExpansionPoint p) {
    const std::size_t r = m.block_rows();
    const std::size_t s = m.block_size();
    if (r != m.block_cols()) throw DimensionError("quasideterminant: block matrix is not square");
    if (p.i < 1 || p.i > r || p.j < 1 || p.j > r)
        throw DimensionError("quasideterminant: expansion point " + point_name(p) + " out of range");
    const std::size_t pi = p.i - 1;
    const std::size_t pj = p.j - 1;
    if (r == 1) return m.block(0, 0);

    std::vector<std::size_t> rows, cols;
    for (std::size_t k = 0; k < r; ++k) {
        if (k != pi) rows.push_back(k);
        if (k != pj) cols.push_back(k);
    }
    const std::size_t n = (r - 1) * s;
    ComplexMatrix a(n, n), b(n, s), c(s, n);
    for (std::size_t I = 0; I < r - 1; ++I) {
        for (std::size_t J = 0; J < r - 1; ++J) place(a, m.block(rows[I], cols[J]), I * s, J * s);
        place(b, m.block(rows[I], pj), I * s, 0);
        place(c, m.block(pi, cols[I]), 0, I * s);
    }
    try {
        return quasideterminant_bordered(a, b, c, m.block(pi, pj));
    } catch (const SingularMatrixError& e) {
        throw SingularMatrixError("quasideterminant at " + point_name(p) + ": " + e.what(),
                                  e.pivot());
    }
}

BlockMatrix quasi_inverse(const BlockMatrix& m) {
    if (m.block_rows() != 2 || m.block_cols() != 2)
        throw DimensionError("quasi_inverse: expects a 2x2 block matrix");
    BlockMatrix out(2, 2, m.block_size());
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 2; ++j) {
            const ExpansionPoint p{j, i};
            const ComplexMatrix q = quasideterminant(m, p);
            try {
                out.set_block(i - 1, j - 1, inverse(q));
            } catch (const SingularMatrixError& e) {
                throw SingularMatrixError("quasi_inverse: |M|" + point_name(p) +
                                              " is singular: " + e.what(),
                                          e.pivot());
            }
        }
    return out;
}

}  // namespace ncwave
