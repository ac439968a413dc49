#pragma once

#include <cstddef>

#include "ncalgebra.hpp"

namespace ncwave {

/// 1-based block position about which a quasideterminant is expanded.
struct ExpansionPoint {
    std::size_t i;
    std::size_t j;
};

/// |M|_ij = m_ij - r (M^ij)^-1 c over blocks. Throws SingularMatrixError if
/// M^ij is singular; the message names the expansion point.
ComplexMatrix quasideterminant(const BlockMatrix& m, ExpansionPoint p);

/// Bordered form D - C A^-1 B for rectangular borders: A is N x N, B is N x q,
/// C is p x N and D is p x q. This is the quasideterminant of [[A, B], [C, D]]
/// expanded at the D position.
ComplexMatrix quasideterminant_bordered(const ComplexMatrix& a, const ComplexMatrix& b,
                                        const ComplexMatrix& c, const ComplexMatrix& d);

/// Inverse of a 2x2 block matrix from its quasideterminants: block (i, j) of
/// the result is |M|_ji^-1.
BlockMatrix quasi_inverse(const BlockMatrix& m);

}  // namespace ncwave
