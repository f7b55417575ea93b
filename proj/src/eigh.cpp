// eigh.cpp — complex Hermitian eigensolver.
//
// Two stages: unitary Householder reduction to a real symmetric tridiagonal
// matrix (subdiagonal phases absorbed into the accumulated transform), then
// the classic implicit-shift QL iteration with eigenvector accumulation.
#include "decoq/eigh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "decoq/errors.hpp"
#include "decoq/kernels.hpp"

namespace decoq {
namespace {

// Tridiagonalize Hermitian A in place; fills d (diagonal), e (real
// subdiagonal) and the unitary q with A = q · T · q†.
void householder_tridiag(CMatrix& a, CMatrix& q, std::vector<double>& d,
                         std::vector<double>& e) {
    const int n = a.rows();
    const auto& K = kern::active();
    q = CMatrix::identity(n);

    std::vector<cxd> v, p, u;
    for (int k = 0; k + 2 < n; ++k) {
        const int len = n - 1 - k;
        v.assign(static_cast<std::size_t>(len), cxd{0, 0});
        for (int i = 0; i < len; ++i) v[static_cast<std::size_t>(i)] = a(k + 1 + i, k);

        double sigma2 = K.sum_abs2(v.data(), v.size());
        double sigma = std::sqrt(sigma2);
        const double x0abs = std::abs(v[0]);
        if (sigma == 0.0) { a(k + 1, k) = 0.0; continue; }

        const cxd phase = (x0abs > 0.0) ? v[0] / x0abs : cxd{1.0, 0.0};
        const cxd alpha = -phase * sigma;
        v[0] -= alpha; // v[0] = phase * (|x0| + sigma), no cancellation
        const double beta = 1.0 / (sigma * (sigma + x0abs));

        // Two-sided update of the trailing block B = A[k+1.., k+1..]:
        // p = beta*B*v, w = p - (beta/2)(v†p) v, B -= v w† + w v†.
        p.assign(static_cast<std::size_t>(len), cxd{0, 0});
        for (int i = 0; i < len; ++i) {
            const cxd* row = &a(k + 1 + i, k + 1);
            p[static_cast<std::size_t>(i)] = beta * K.dot(row, v.data(), v.size());
        }
        const cxd vp = K.dot_conj(v.data(), p.data(), v.size());
        const cxd kk = 0.5 * beta * vp;
        u = p;
        K.axpy(u.data(), -kk, v.data(), u.size()); // u = w
        for (int i = 0; i < len; ++i) {
            cxd* row = &a(k + 1 + i, k + 1);
            K.axpy_conj(row, -v[static_cast<std::size_t>(i)], u.data(), u.size());
            K.axpy_conj(row, -u[static_cast<std::size_t>(i)], v.data(), v.size());
        }

        a(k + 1, k) = alpha;
        for (int i = 1; i < len; ++i) a(k + 1 + i, k) = 0.0;

        // Q <- Q (I - beta v v†), acting on columns k+1..n-1.
        for (int r = 0; r < n; ++r) {
            cxd* qrow = &q(r, k + 1);
            const cxd dotv = K.dot(qrow, v.data(), v.size());
            K.axpy_conj(qrow, -beta * dotv, v.data(), v.size());
        }
    }

    d.resize(static_cast<std::size_t>(n));
    e.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = a(i, i).real();

    // Absorb subdiagonal phases into Q so the tridiagonal matrix is real.
    cxd s{1.0, 0.0};
    for (int i = 0; i + 1 < n; ++i) {
        const cxd ce = a(i + 1, i);
        const double m = std::abs(ce);
        e[static_cast<std::size_t>(i)] = m;
        if (m > 0.0) s *= ce / m;
        for (int r = 0; r < n; ++r) q(r, i + 1) *= s;
    }
}

// Implicit-shift QL on (d, e) with rotations applied to q's columns.
void tql2(std::vector<double>& d, std::vector<double>& e, CMatrix& q) {
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    const double eps = std::numeric_limits<double>::epsilon();

    // e[i] couples d[i] and d[i+1]; e[n-1] is scratch.
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw InternalConsistencyError("eigh: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int row = 0; row < q.rows(); ++row) {
                        const cxd t = q(row, i + 1);
                        q(row, i + 1) = s * q(row, i) + c * t;
                        q(row, i) = c * q(row, i) - s * t;
                    }
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace

EighResult eigh(const CMatrix& h, double herm_tol) {
    if (!h.square()) throw UsageError("eigh: matrix must be square");
    const int n = h.rows();
    if (!h.is_hermitian(herm_tol)) throw ValidationError("eigh: matrix is not Hermitian");

    // Work on the Hermitian average so roundoff asymmetry cannot leak in.
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

    EighResult res;
    std::vector<double> e;
    householder_tridiag(a, res.vectors, res.eigenvalues, e);
    tql2(res.eigenvalues, e, res.vectors);

    // Ascending eigenvalue order, columns permuted along.
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int i, int j) { return res.eigenvalues[static_cast<std::size_t>(i)] <
                                         res.eigenvalues[static_cast<std::size_t>(j)]; });
    std::vector<double> ds(static_cast<std::size_t>(n));
    CMatrix vs(n, n);
    for (int c = 0; c < n; ++c) {
        ds[static_cast<std::size_t>(c)] = res.eigenvalues[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])];
        for (int r = 0; r < n; ++r) vs(r, c) = res.vectors(r, idx[static_cast<std::size_t>(c)]);
    }
    res.eigenvalues = std::move(ds);
    res.vectors = std::move(vs);
    return res;
}

} // namespace decoq
