// qoperator.hpp — dense operators tagged with a tensor-space layout, and the
// core operations on them: kron, partial trace, commutators, unitary evolution.
#pragma once

#include <vector>

#include "decoq/layout.hpp"
#include "decoq/matrix.hpp"

namespace decoq {

class QOperator {
public:
    QOperator() = default;
    QOperator(SpaceLayout layout, CMatrix m); // checks the matrix fits the layout

    static QOperator zero(const SpaceLayout& l);
    static QOperator identity(const SpaceLayout& l);

    const SpaceLayout& layout() const { return layout_; }
    const CMatrix& matrix() const { return m_; }
    CMatrix& matrix() { return m_; }
    long dim() const { return layout_.total(); }

    bool is_hermitian(double rel_tol = 1e-12) const { return m_.is_hermitian(rel_tol); }
    /// trace within trace_tol of 1 and eigenvalues >= -eig_tol.
    bool is_density(double trace_tol = 1e-10, double eig_tol = 1e-10) const;

    QOperator& operator+=(const QOperator& o);
    QOperator& operator-=(const QOperator& o);
    QOperator& operator*=(cxd s);

private:
    SpaceLayout layout_;
    CMatrix m_;
};

QOperator operator+(QOperator a, const QOperator& b);
QOperator operator-(QOperator a, const QOperator& b);
QOperator operator*(QOperator a, cxd s);
QOperator operator*(cxd s, QOperator a);
QOperator operator*(const QOperator& a, const QOperator& b); // same-layout product

/// Plain matrix Kronecker product (row (i*p+k), col (j*q+l) = A(i,j)*B(k,l)).
CMatrix kron_matrix(const CMatrix& a, const CMatrix& b);

/// Tensor product; resulting layout is the concatenation (capacity-checked).
QOperator kron(const QOperator& a, const QOperator& b);

/// Trace out every factor not in `keep`; kept factors stay in original order.
/// `keep` must be non-empty, sorted-unique after normalization, and in range.
QOperator partial_trace(const QOperator& rho, const std::vector<int>& keep);

QOperator commutator(const QOperator& a, const QOperator& b);

/// tr(a·b) without forming the product.
cxd trace_of_product(const QOperator& a, const QOperator& b);

/// rho(t) = e^{-iHt} rho0 e^{+iHt} by Hermitian eigendecomposition of H.
/// Throws ValidationError for non-Hermitian H, UsageError on layout mismatch.
QOperator evolve_unitary(const QOperator& rho0, const QOperator& h, double t);

/// op acting on one factor, identity elsewhere: I ⊗ ... ⊗ op ⊗ ... ⊗ I.
QOperator embed(const SpaceLayout& layout, int factor, const CMatrix& op);

} // namespace decoq
