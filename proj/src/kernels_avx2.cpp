// kernels_avx2.cpp — AVX2+FMA variants of the complex inner loops.
// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.
#include "decoq/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <algorithm>

namespace decoq::kern {
namespace {

// One AVX2 register holds two complex doubles as [re0, im0, re1, im1].
// alpha * v for broadcast alpha = ar + i*ai:
//   t   = ai * swap(v)            = [ai*im0, ai*re0, ...]
//   res = fmaddsub(ar, v, t)      = [ar*re0 - ai*im0, ar*im0 + ai*re0, ...]
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d v) {
    __m256d t = _mm256_mul_pd(ai, _mm256_permute_pd(v, 0x5));
    return _mm256_fmaddsub_pd(ar, v, t);
}

// Elementwise complex product of packed pairs x*y.
inline __m256d cmul_pairs(__m256d x, __m256d y) {
    __m256d xr = _mm256_movedup_pd(x);          // [re0, re0, re1, re1]
    __m256d xi = _mm256_permute_pd(x, 0xF);     // [im0, im0, im1, im1]
    __m256d t = _mm256_mul_pd(xi, _mm256_permute_pd(y, 0x5));
    return _mm256_fmaddsub_pd(xr, y, t);
}

// Elementwise conj(x)*y of packed pairs.
inline __m256d cmul_conj_pairs(__m256d x, __m256d y) {
    __m256d xr = _mm256_movedup_pd(x);
    __m256d xi = _mm256_permute_pd(x, 0xF);
    __m256d t = _mm256_mul_pd(xi, _mm256_permute_pd(y, 0x5));
    return _mm256_fmsubadd_pd(xr, y, t);
}

inline cxd hsum_cx(__m256d acc) {
    alignas(32) double buf[4];
    _mm256_store_pd(buf, acc);
    return {buf[0] + buf[2], buf[1] + buf[3]};
}

void gemm_avx2(cxd* c, const cxd* a, const cxd* b, int n, int k, int m) {
    std::fill_n(c, static_cast<std::size_t>(n) * m, cxd{0.0, 0.0});
    for (int i = 0; i < n; ++i) {
        double* ci = reinterpret_cast<double*>(c + static_cast<std::size_t>(i) * m);
        const cxd* ai = a + static_cast<std::size_t>(i) * k;
        for (int l = 0; l < k; ++l) {
            const cxd ail = ai[l];
            if (ail == cxd{0.0, 0.0}) continue;
            const double* bl = reinterpret_cast<const double*>(b + static_cast<std::size_t>(l) * m);
            const __m256d ar = _mm256_set1_pd(ail.real());
            const __m256d aim = _mm256_set1_pd(ail.imag());
            int j = 0;
            for (; j + 4 <= m; j += 4) {
                __m256d b0 = _mm256_loadu_pd(bl + 2 * j);
                __m256d b1 = _mm256_loadu_pd(bl + 2 * j + 4);
                __m256d c0 = _mm256_loadu_pd(ci + 2 * j);
                __m256d c1 = _mm256_loadu_pd(ci + 2 * j + 4);
                c0 = _mm256_add_pd(c0, cmul_broadcast(ar, aim, b0));
                c1 = _mm256_add_pd(c1, cmul_broadcast(ar, aim, b1));
                _mm256_storeu_pd(ci + 2 * j, c0);
                _mm256_storeu_pd(ci + 2 * j + 4, c1);
            }
            for (; j + 2 <= m; j += 2) {
                __m256d b0 = _mm256_loadu_pd(bl + 2 * j);
                __m256d c0 = _mm256_loadu_pd(ci + 2 * j);
                c0 = _mm256_add_pd(c0, cmul_broadcast(ar, aim, b0));
                _mm256_storeu_pd(ci + 2 * j, c0);
            }
            for (; j < m; ++j) {
                cxd* cc = c + static_cast<std::size_t>(i) * m + j;
                *cc += ail * b[static_cast<std::size_t>(l) * m + j];
            }
        }
    }
}

void gemv_avx2(cxd* y, const cxd* a, const cxd* x, int n, int m) {
    const double* xd = reinterpret_cast<const double*>(x);
    for (int i = 0; i < n; ++i) {
        const double* ai = reinterpret_cast<const double*>(a + static_cast<std::size_t>(i) * m);
        __m256d acc = _mm256_setzero_pd();
        int j = 0;
        for (; j + 2 <= m; j += 2) {
            __m256d av = _mm256_loadu_pd(ai + 2 * j);
            __m256d xv = _mm256_loadu_pd(xd + 2 * j);
            acc = _mm256_add_pd(acc, cmul_pairs(av, xv));
        }
        cxd s = hsum_cx(acc);
        for (; j < m; ++j) s += a[static_cast<std::size_t>(i) * m + j] * x[j];
        y[i] = s;
    }
}

void axpy_avx2(cxd* y, cxd alpha, const cxd* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        yv = _mm256_add_pd(yv, cmul_broadcast(ar, ai, xv));
        _mm256_storeu_pd(yd + 2 * i, yv);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpy_conj_avx2(cxd* y, cxd alpha, const cxd* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_xor_pd(_mm256_loadu_pd(xd + 2 * i), conj_mask);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        yv = _mm256_add_pd(yv, cmul_broadcast(ar, ai, xv));
        _mm256_storeu_pd(yd + 2 * i, yv);
    }
    for (; i < n; ++i) y[i] += alpha * std::conj(x[i]);
}

void scale_copy_avx2(cxd* dst, cxd alpha, const cxd* src, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    double* dd = reinterpret_cast<double*>(dst);
    const double* sd = reinterpret_cast<const double*>(src);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d sv = _mm256_loadu_pd(sd + 2 * i);
        _mm256_storeu_pd(dd + 2 * i, cmul_broadcast(ar, ai, sv));
    }
    for (; i < n; ++i) dst[i] = alpha * src[i];
}

double sum_abs2_avx2(const cxd* a, std::size_t n) {
    const double* ad = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(ad + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double buf[4];
    _mm256_store_pd(buf, acc);
    double s = buf[0] + buf[1] + buf[2] + buf[3];
    for (; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

cxd dot_avx2(const cxd* x, const cxd* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc = _mm256_add_pd(acc, cmul_pairs(xv, yv));
    }
    cxd s = hsum_cx(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

cxd dot_conj_avx2(const cxd* x, const cxd* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc = _mm256_add_pd(acc, cmul_conj_pairs(xv, yv));
    }
    cxd s = hsum_cx(acc);
    for (; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

void phase_scale_avx2(cxd* m, const cxd* w, const cxd* ph, int n) {
    // Row factor ph[i] broadcast, column factors conj(ph[j]) streamed.
    const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
    const double* phd = reinterpret_cast<const double*>(ph);
    for (int i = 0; i < n; ++i) {
        const cxd pi = ph[i];
        const __m256d pr = _mm256_set1_pd(pi.real());
        const __m256d pim = _mm256_set1_pd(pi.imag());
        double* mi = reinterpret_cast<double*>(m + static_cast<std::size_t>(i) * n);
        const double* wi = reinterpret_cast<const double*>(w + static_cast<std::size_t>(i) * n);
        int j = 0;
        for (; j + 2 <= n; j += 2) {
            __m256d wv = _mm256_loadu_pd(wi + 2 * j);
            __m256d pj = _mm256_xor_pd(_mm256_loadu_pd(phd + 2 * j), conj_mask);
            __m256d t = cmul_broadcast(pr, pim, wv);
            _mm256_storeu_pd(mi + 2 * j, cmul_pairs(t, pj));
        }
        for (; j < n; ++j)
            m[static_cast<std::size_t>(i) * n + j] =
                w[static_cast<std::size_t>(i) * n + j] * (pi * std::conj(ph[j]));
    }
}

} // namespace

const Kernels& avx2_kernels() {
    static const Kernels k = {
        "avx2",        gemm_avx2,      gemv_avx2, axpy_avx2,
        axpy_conj_avx2, scale_copy_avx2, sum_abs2_avx2,
        dot_avx2,      dot_conj_avx2,  phase_scale_avx2,
    };
    return k;
}

} // namespace decoq::kern

#else // non-x86: no AVX2 backend, dispatcher never selects it

namespace decoq::kern {
const Kernels& avx2_kernels() { return scalar_kernels(); }
} // namespace decoq::kern

#endif
