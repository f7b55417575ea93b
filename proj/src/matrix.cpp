// matrix.cpp
#include "decoq/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "decoq/errors.hpp"
#include "decoq/kernels.hpp"

namespace decoq {

CMatrix::CMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw UsageError("CMatrix: negative dimensions");
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<cxd>& d) {
    CMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cxd CMatrix::trace() const {
    cxd t{0.0, 0.0};
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const { return std::sqrt(decoq::sum_abs2(*this)); }

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const cxd& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::hermiticity_defect() const {
    double d = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

bool CMatrix::is_hermitian(double rel_tol) const {
    if (!square()) return false;
    return hermiticity_defect() <= rel_tol * max_abs();
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("CMatrix +=: shape mismatch");
    kern::active().axpy(data(), cxd{1.0, 0.0}, o.data(), data_.size());
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("CMatrix -=: shape mismatch");
    kern::active().axpy(data(), cxd{-1.0, 0.0}, o.data(), data_.size());
    return *this;
}

CMatrix& CMatrix::operator*=(cxd s) {
    kern::active().scale_copy(data(), s, data(), data_.size());
    return *this;
}

std::vector<cxd> CMatrix::apply(const std::vector<cxd>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw UsageError("CMatrix::apply: size mismatch");
    std::vector<cxd> y(static_cast<std::size_t>(rows_));
    kern::active().gemv(y.data(), data(), v.data(), rows_, cols_);
    return y;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(CMatrix a, cxd s) { return a *= s; }
CMatrix operator*(cxd s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw UsageError("CMatrix *: shape mismatch");
    CMatrix c(a.rows(), b.cols());
    kern::active().gemm(c.data(), a.data(), b.data(), a.rows(), a.cols(), b.cols());
    return c;
}

cxd trace_product_matrix(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw UsageError("trace_product: shape mismatch");
    // tr(a·b) = sum_i (row i of a) · (column i of b); walk b columns once.
    cxd acc{0.0, 0.0};
    for (int i = 0; i < a.rows(); ++i)
        for (int l = 0; l < a.cols(); ++l) acc += a(i, l) * b(l, i);
    return acc;
}

double sum_abs2(const CMatrix& a) {
    return kern::active().sum_abs2(a.data(), static_cast<std::size_t>(a.size()));
}

cxd expectation(const std::vector<cxd>& x, const CMatrix& m, const std::vector<cxd>& y) {
    std::vector<cxd> my = m.apply(y);
    return kern::active().dot_conj(x.data(), my.data(), my.size());
}

} // namespace decoq
