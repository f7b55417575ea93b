// qoperator.cpp
#include "decoq/qoperator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "decoq/eigh.hpp"
#include "decoq/errors.hpp"
#include "decoq/kernels.hpp"

namespace decoq {

QOperator::QOperator(SpaceLayout layout, CMatrix m)
    : layout_(std::move(layout)), m_(std::move(m)) {
    if (!m_.square() || m_.rows() != layout_.total())
        throw UsageError("QOperator: matrix size does not match layout " + layout_.to_string());
}

QOperator QOperator::zero(const SpaceLayout& l) {
    return QOperator(l, CMatrix(static_cast<int>(l.total()), static_cast<int>(l.total())));
}

QOperator QOperator::identity(const SpaceLayout& l) {
    return QOperator(l, CMatrix::identity(static_cast<int>(l.total())));
}

bool QOperator::is_density(double trace_tol, double eig_tol) const {
    if (!is_hermitian(1e-10)) return false;
    if (std::abs(m_.trace() - cxd{1.0, 0.0}) > trace_tol) return false;
    EighResult es = eigh(m_, 1e-10);
    return es.eigenvalues.front() >= -eig_tol;
}

QOperator& QOperator::operator+=(const QOperator& o) {
    if (layout_ != o.layout_) throw UsageError("QOperator +=: layout mismatch");
    m_ += o.m_;
    return *this;
}

QOperator& QOperator::operator-=(const QOperator& o) {
    if (layout_ != o.layout_) throw UsageError("QOperator -=: layout mismatch");
    m_ -= o.m_;
    return *this;
}

QOperator& QOperator::operator*=(cxd s) {
    m_ *= s;
    return *this;
}

QOperator operator+(QOperator a, const QOperator& b) { return a += b; }
QOperator operator-(QOperator a, const QOperator& b) { return a -= b; }
QOperator operator*(QOperator a, cxd s) { return a *= s; }
QOperator operator*(cxd s, QOperator a) { return a *= s; }

QOperator operator*(const QOperator& a, const QOperator& b) {
    if (a.layout() != b.layout()) throw UsageError("QOperator *: layout mismatch");
    return QOperator(a.layout(), a.matrix() * b.matrix());
}

CMatrix kron_matrix(const CMatrix& a, const CMatrix& b) {
    const int n = a.rows(), m = a.cols(), p = b.rows(), q = b.cols();
    CMatrix c(n * p, m * q);
    const auto& K = kern::active();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < p; ++k) {
            cxd* dst_row = &c(i * p + k, 0);
            const cxd* b_row = &b(k, 0);
            for (int j = 0; j < m; ++j) {
                const cxd aij = a(i, j);
                if (aij == cxd{0.0, 0.0}) continue;
                K.scale_copy(dst_row + static_cast<std::size_t>(j) * q, aij, b_row,
                             static_cast<std::size_t>(q));
            }
        }
    return c;
}

QOperator kron(const QOperator& a, const QOperator& b) {
    SpaceLayout l = a.layout().concat(b.layout()); // capacity-checked
    return QOperator(std::move(l), kron_matrix(a.matrix(), b.matrix()));
}

QOperator partial_trace(const QOperator& rho, const std::vector<int>& keep) {
    const SpaceLayout& l = rho.layout();
    const int f = l.factors();
    if (keep.empty()) throw UsageError("partial_trace: keep set is empty");
    std::vector<int> ks = keep;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    if (ks.front() < 0 || ks.back() >= f)
        throw UsageError("partial_trace: keep index out of range");

    std::vector<bool> kept(static_cast<std::size_t>(f), false);
    for (int k : ks) kept[static_cast<std::size_t>(k)] = true;

    // Composite strides, leftmost factor most significant.
    std::vector<long> stride(static_cast<std::size_t>(f), 1);
    for (int i = f - 2; i >= 0; --i)
        stride[static_cast<std::size_t>(i)] =
            stride[static_cast<std::size_t>(i + 1)] * l.dim(i + 1);

    // Enumerate composite offsets of the kept and traced multi-indices.
    auto offsets_for = [&](bool want_kept) {
        std::vector<long> offs{0};
        for (int i = 0; i < f; ++i) {
            if (kept[static_cast<std::size_t>(i)] != want_kept) continue;
            std::vector<long> next;
            next.reserve(offs.size() * static_cast<std::size_t>(l.dim(i)));
            for (long base : offs)
                for (int v = 0; v < l.dim(i); ++v)
                    next.push_back(base + v * stride[static_cast<std::size_t>(i)]);
            offs = std::move(next);
        }
        return offs;
    };
    const std::vector<long> kept_offs = offsets_for(true);
    const std::vector<long> traced_offs = offsets_for(false);

    std::vector<int> out_dims;
    for (int k : ks) out_dims.push_back(l.dim(k));
    SpaceLayout out_layout(out_dims);
    const int dk = static_cast<int>(kept_offs.size());
    CMatrix out(dk, dk);
    const CMatrix& in = rho.matrix();
    const long n = l.total();
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j) {
            cxd acc{0.0, 0.0};
            for (long t : traced_offs)
                acc += in.data()[(kept_offs[static_cast<std::size_t>(i)] + t) * n +
                                 (kept_offs[static_cast<std::size_t>(j)] + t)];
            out(i, j) = acc;
        }
    return QOperator(std::move(out_layout), std::move(out));
}

QOperator commutator(const QOperator& a, const QOperator& b) {
    if (a.layout() != b.layout()) throw UsageError("commutator: layout mismatch");
    CMatrix ab = a.matrix() * b.matrix();
    CMatrix ba = b.matrix() * a.matrix();
    ab -= ba;
    return QOperator(a.layout(), std::move(ab));
}

cxd trace_of_product(const QOperator& a, const QOperator& b) {
    if (a.layout() != b.layout()) throw UsageError("trace_of_product: layout mismatch");
    return trace_product_matrix(a.matrix(), b.matrix());
}

QOperator evolve_unitary(const QOperator& rho0, const QOperator& h, double t) {
    if (rho0.layout() != h.layout()) throw UsageError("evolve_unitary: layout mismatch");
    if (!h.is_hermitian(1e-12))
        throw ValidationError("evolve_unitary: generator is not Hermitian");
    const EighResult es = eigh(h.matrix());
    const int n = static_cast<int>(rho0.dim());

    CMatrix w = es.vectors.adjoint() * rho0.matrix() * es.vectors;
    std::vector<cxd> ph(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double a = -es.eigenvalues[static_cast<std::size_t>(i)] * t;
        ph[static_cast<std::size_t>(i)] = {std::cos(a), std::sin(a)};
    }
    CMatrix m(n, n);
    kern::active().phase_scale(m.data(), w.data(), ph.data(), n);
    CMatrix out = es.vectors * m * es.vectors.adjoint();
    return QOperator(rho0.layout(), std::move(out));
}

QOperator embed(const SpaceLayout& layout, int factor, const CMatrix& op) {
    if (factor < 0 || factor >= layout.factors())
        throw UsageError("embed: factor index out of range");
    if (!op.square() || op.rows() != layout.dim(factor))
        throw UsageError("embed: operator does not match factor dimension");
    CMatrix cur = CMatrix::identity(1);
    for (int i = 0; i < layout.factors(); ++i) {
        const CMatrix& next = (i == factor) ? op : CMatrix::identity(layout.dim(i));
        cur = kron_matrix(cur, next);
    }
    return QOperator(layout, std::move(cur));
}

} // namespace decoq
