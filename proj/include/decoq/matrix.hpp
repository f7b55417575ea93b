// matrix.hpp — dense complex matrix value type over the kernel layer
#pragma once

#include <complex>
#include <vector>

namespace decoq {

using cxd = std::complex<double>;

/// Dense complex matrix, row-major. Plain value semantics; all arithmetic
/// routes through kern::active().
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols); // zero-initialized
    static CMatrix identity(int n);
    static CMatrix diagonal(const std::vector<cxd>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    long size() const { return static_cast<long>(rows_) * cols_; }

    cxd* data() { return data_.data(); }
    const cxd* data() const { return data_.data(); }

    cxd& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cxd& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    CMatrix adjoint() const;
    cxd trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    /// max|M - M†| <= rel_tol * max|M|.
    bool is_hermitian(double rel_tol = 1e-12) const;
    double hermiticity_defect() const; // max|M - M†|

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cxd s);

    std::vector<cxd> apply(const std::vector<cxd>& v) const; // M·v

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cxd> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(CMatrix a, cxd s);
CMatrix operator*(cxd s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// tr(a·b) without forming the product.
cxd trace_product_matrix(const CMatrix& a, const CMatrix& b);

/// sum of |entries|^2 (= tr(M M†) = tr(M²) for Hermitian M).
double sum_abs2(const CMatrix& a);

/// ⟨x|M|y⟩ with bra conjugation.
cxd expectation(const std::vector<cxd>& x, const CMatrix& m, const std::vector<cxd>& y);

} // namespace decoq
