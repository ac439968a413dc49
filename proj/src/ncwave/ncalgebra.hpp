#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ncwave {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Rows and columns are both at least 1.
class ComplexMatrix {
public:
    ComplexMatrix() : ComplexMatrix(1, 1) {}
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> values);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix scalar(cplx value);
    static ComplexMatrix diagonal(const std::vector<cplx>& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<cplx>& data() const noexcept { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    double max_abs() const;
    double norm1() const;  // max column sum
    bool finite() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<cplx> data_;
};

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cplx s);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix conj(const ComplexMatrix& a);

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return sub(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a) { return scale(a, -1.0); }
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mul(a, b); }
inline ComplexMatrix operator*(cplx s, const ComplexMatrix& a) { return scale(a, s); }
inline ComplexMatrix operator*(const ComplexMatrix& a, cplx s) { return scale(a, s); }

/// Largest entrywise modulus of a - b.
double max_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// LU factorisation with partial pivoting, PA = LU packed in one matrix.
struct LUDecomposition {
    ComplexMatrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
};

/// Pivots with modulus below this fraction of max|entry| count as singular.
inline constexpr double kPivotThreshold = 1e-12;

/// Throws SingularMatrixError (carrying the pivot) or DimensionError.
LUDecomposition lu_factor(const ComplexMatrix& a);
ComplexMatrix lu_solve(const LUDecomposition& f, const ComplexMatrix& b);

/// Solve A X = B.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix inverse(const ComplexMatrix& a);

struct InverseResult {
    ComplexMatrix value;
    double condition;  // ||A||_1 ||A^-1||_1
};
InverseResult inverse_with_condition(const ComplexMatrix& a);

/// 1-norm condition number; infinity when A is numerically singular.
double condition_1(const ComplexMatrix& a);

/// Determinant by Gaussian elimination; returns 0 for exactly singular input
/// instead of throwing.
cplx determinant(const ComplexMatrix& a);

/// r x s grid of equally sized square blocks. Block indices are 0-based here;
/// the quasideterminant layer converts from 1-based expansion points.
class BlockMatrix {
public:
    BlockMatrix(std::size_t block_rows, std::size_t block_cols, std::size_t block_size);

    std::size_t block_rows() const noexcept { return brows_; }
    std::size_t block_cols() const noexcept { return bcols_; }
    std::size_t block_size() const noexcept { return bsize_; }

    const ComplexMatrix& block(std::size_t i, std::size_t j) const;
    void set_block(std::size_t i, std::size_t j, const ComplexMatrix& m);

private:
    std::size_t brows_;
    std::size_t bcols_;
    std::size_t bsize_;
    std::vector<ComplexMatrix> blocks_;
};

ComplexMatrix assemble(const BlockMatrix& b);
BlockMatrix extract(const ComplexMatrix& m, std::size_t block_size);

/// Copy of rows [r0, r0+nr) and columns [c0, c0+nc).
ComplexMatrix submatrix(const ComplexMatrix& m, std::size_t r0, std::size_t c0,
                        std::size_t nr, std::size_t nc);
void place(ComplexMatrix& dst, const ComplexMatrix& src, std::size_t r0, std::size_t c0);

}  // namespace ncwave
