// kernels_scalar.cpp — reference implementations of the complex inner loops
#include "decoq/kernels.hpp"

#include <algorithm>

namespace decoq::kern {
namespace {

void gemm_scalar(cxd* c, const cxd* a, const cxd* b, int n, int k, int m) {
    std::fill_n(c, static_cast<std::size_t>(n) * m, cxd{0.0, 0.0});
    for (int i = 0; i < n; ++i) {
        cxd* ci = c + static_cast<std::size_t>(i) * m;
        const cxd* ai = a + static_cast<std::size_t>(i) * k;
        for (int l = 0; l < k; ++l) {
            const cxd ail = ai[l];
            if (ail == cxd{0.0, 0.0}) continue;
            const cxd* bl = b + static_cast<std::size_t>(l) * m;
            for (int j = 0; j < m; ++j) ci[j] += ail * bl[j];
        }
    }
}

void gemv_scalar(cxd* y, const cxd* a, const cxd* x, int n, int m) {
    for (int i = 0; i < n; ++i) {
        const cxd* ai = a + static_cast<std::size_t>(i) * m;
        cxd acc{0.0, 0.0};
        for (int j = 0; j < m; ++j) acc += ai[j] * x[j];
        y[i] = acc;
    }
}

void axpy_scalar(cxd* y, cxd alpha, const cxd* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpy_conj_scalar(cxd* y, cxd alpha, const cxd* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * std::conj(x[i]);
}

void scale_copy_scalar(cxd* dst, cxd alpha, const cxd* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = alpha * src[i];
}

double sum_abs2_scalar(const cxd* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return acc;
}

cxd dot_scalar(const cxd* x, const cxd* y, std::size_t n) {
    cxd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

cxd dot_conj_scalar(const cxd* x, const cxd* y, std::size_t n) {
    cxd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

void phase_scale_scalar(cxd* m, const cxd* w, const cxd* ph, int n) {
    for (int i = 0; i < n; ++i) {
        const cxd pi = ph[i];
        cxd* mi = m + static_cast<std::size_t>(i) * n;
        const cxd* wi = w + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) mi[j] = wi[j] * (pi * std::conj(ph[j]));
    }
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k = {
        "scalar",        gemm_scalar,      gemv_scalar, axpy_scalar,
        axpy_conj_scalar, scale_copy_scalar, sum_abs2_scalar,
        dot_scalar,      dot_conj_scalar,  phase_scale_scalar,
    };
    return k;
}

} // namespace decoq::kern
