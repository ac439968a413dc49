#include "ncalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace ncwave {

namespace {

std::string shape(const ComplexMatrix& m) {
    std::ostringstream s;
    s << m.rows() << "x" << m.cols();
    return s.str();
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
    data_.assign(rows * cols, cplx(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> values)
    : ComplexMatrix(rows, cols) {
    if (values.size() != rows * cols)
        throw DimensionError("initializer length does not match matrix shape");
    std::copy(values.begin(), values.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::scalar(cplx value) {
    ComplexMatrix m(1, 1);
    m(0, 0) = value;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "sub");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::norm1() const {
    double best = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

bool ComplexMatrix::finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const cplx& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r = a;
    r += b;
    return r;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r = a;
    r -= b;
    return r;
}

ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("mul: inner dimensions differ " + shape(a) + " * " + shape(b));
    ComplexMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

ComplexMatrix scale(const ComplexMatrix& a, cplx s) {
    ComplexMatrix r = a;
    r *= s;
    return r;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

ComplexMatrix conj(const ComplexMatrix& a) {
    ComplexMatrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = std::conj(a(i, j));
    return r;
}

double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

LUDecomposition lu_factor(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionError("lu_factor: matrix is " + shape(a));
    const std::size_t n = a.rows();
    LUDecomposition f{a, std::vector<std::size_t>(n), 1};
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    const double scale_ref = a.max_abs();
    const double tiny = kPivotThreshold * scale_ref;
    ComplexMatrix& lu = f.lu;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (!(best > tiny) || scale_ref == 0.0) {
            std::ostringstream s;
            s << "matrix is numerically singular: pivot " << best << " at column " << k
              << " below threshold " << tiny;
            throw SingularMatrixError(s.str(), best);
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
        }
        const cplx piv = lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx m = lu(i, k) / piv;
            lu(i, k) = m;
            if (m == cplx(0.0, 0.0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
        }
    }
    return f;
}

ComplexMatrix lu_solve(const LUDecomposition& f, const ComplexMatrix& b) {
    const std::size_t n = f.lu.rows();
    if (b.rows() != n) throw DimensionError("lu_solve: right-hand side has wrong row count");
    ComplexMatrix x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = b(f.perm[i], c);
            for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x(j, c);
            x(i, c) = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            cplx s = x(ii, c);
            for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * x(j, c);
            x(ii, c) = s / f.lu(ii, ii);
        }
    }
    return x;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
    return lu_solve(lu_factor(a), b);
}

ComplexMatrix inverse(const ComplexMatrix& a) {
    return lu_solve(lu_factor(a), ComplexMatrix::identity(a.rows()));
}

InverseResult inverse_with_condition(const ComplexMatrix& a) {
    ComplexMatrix inv = inverse(a);
    const double cond = a.norm1() * inv.norm1();
    return {std::move(inv), cond};
}

double condition_1(const ComplexMatrix& a) {
    try {
        return inverse_with_condition(a).condition;
    } catch (const SingularMatrixError&) {
        return std::numeric_limits<double>::infinity();
    }
}

cplx determinant(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionError("determinant: matrix is " + shape(a));
    const std::size_t n = a.rows();
    ComplexMatrix m = a;
    cplx det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
        if (m(p, k) == cplx(0.0, 0.0)) return 0.0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

BlockMatrix::BlockMatrix(std::size_t block_rows, std::size_t block_cols, std::size_t block_size)
    : brows_(block_rows), bcols_(block_cols), bsize_(block_size) {
    if (block_rows == 0 || block_cols == 0 || block_size == 0)
        throw DimensionError("block matrix dimensions must be positive");
    blocks_.assign(block_rows * block_cols, ComplexMatrix(block_size, block_size));
}

const ComplexMatrix& BlockMatrix::block(std::size_t i, std::size_t j) const {
    if (i >= brows_ || j >= bcols_) throw DimensionError("block index out of range");
    return blocks_[i * bcols_ + j];
}

void BlockMatrix::set_block(std::size_t i, std::size_t j, const ComplexMatrix& m) {
    if (i >= brows_ || j >= bcols_) throw DimensionError("block index out of range");
    if (m.rows() != bsize_ || m.cols() != bsize_)
        throw DimensionError("block must be " + std::to_string(bsize_) + "x" +
                             std::to_string(bsize_) + ", got " + shape(m));
    blocks_[i * bcols_ + j] = m;
}

ComplexMatrix assemble(const BlockMatrix& b) {
    const std::size_t s = b.block_size();
    ComplexMatrix m(b.block_rows() * s, b.block_cols() * s);
    for (std::size_t i = 0; i < b.block_rows(); ++i)
        for (std::size_t j = 0; j < b.block_cols(); ++j) place(m, b.block(i, j), i * s, j * s);
    return m;
}

BlockMatrix extract(const ComplexMatrix& m, std::size_t block_size) {
    if (block_size == 0 || m.rows() % block_size != 0 || m.cols() % block_size != 0)
        throw DimensionError("extract: " + shape(m) + " is not divisible into blocks of size " +
                             std::to_string(block_size));
    BlockMatrix b(m.rows() / block_size, m.cols() / block_size, block_size);
    for (std::size_t i = 0; i < b.block_rows(); ++i)
        for (std::size_t j = 0; j < b.block_cols(); ++j)
            b.set_block(i, j, submatrix(m, i * block_size, j * block_size, block_size, block_size));
    return b;
}

ComplexMatrix submatrix(const ComplexMatrix& m, std::size_t r0, std::size_t c0,
                        std::size_t nr, std::size_t nc) {
    if (r0 + nr > m.rows() || c0 + nc > m.cols())
        throw DimensionError("submatrix: range exceeds " + shape(m));
    ComplexMatrix r(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) r(i, j) = m(r0 + i, c0 + j);
    return r;
}

void place(ComplexMatrix& dst, const ComplexMatrix& src, std::size_t r0, std::size_t c0) {
    if (r0 + src.rows() > dst.rows() || c0 + src.cols() > dst.cols())
        throw DimensionError("place: " + shape(src) + " does not fit in " + shape(dst));
    for (std::size_t i = 0; i < src.rows(); ++i)
        for (std::size_t j = 0; j < src.cols(); ++j) dst(r0 + i, c0 + j) = src(i, j);
}

}  // namespace ncwave
