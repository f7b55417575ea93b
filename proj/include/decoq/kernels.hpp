// kernels.hpp — scalar reference and SIMD variants of the dense complex
// inner loops, selected at runtime.
#pragma once

#include <complex>
#include <cstddef>

namespace decoq::kern {

using cxd = std::complex<double>;

// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2+FMA, a vectorized one. The two are equivalence-tested; results may
// differ by rounding (FMA contraction, lane-wise accumulation order).
struct Kernels {
    const char* name;

    // C (n×m) = A (n×k) · B (k×m), row-major. C must not alias A or B.
    void (*gemm)(cxd* c, const cxd* a, const cxd* b, int n, int k, int m);

    // y (n) = A (n×m) · x (m). y must not alias x.
    void (*gemv)(cxd* y, const cxd* a, const cxd* x, int n, int m);

    // y += alpha * x
    void (*axpy)(cxd* y, cxd alpha, const cxd* x, std::size_t n);

    // y += alpha * conj(x)
    void (*axpy_conj)(cxd* y, cxd alpha, const cxd* x, std::size_t n);

    // dst = alpha * src
    void (*scale_copy)(cxd* dst, cxd alpha, const cxd* src, std::size_t n);

    // sum_i |a_i|^2
    double (*sum_abs2)(const cxd* a, std::size_t n);

    // sum_i x_i * y_i
    cxd (*dot)(const cxd* x, const cxd* y, std::size_t n);

    // sum_i conj(x_i) * y_i
    cxd (*dot_conj)(const cxd* x, const cxd* y, std::size_t n);

    // m[i,j] = w[i,j] * ph[i] * conj(ph[j]), n×n row-major. m may alias w.
    void (*phase_scale)(cxd* m, const cxd* w, const cxd* ph, int n);
};

const Kernels& scalar_kernels();

bool avx2_available();
// Valid to call only when avx2_available(); falls back to scalar elsewhere.
const Kernels& avx2_kernels();

// Runtime selection: AVX2 when the CPU has it, else scalar. The environment
// variable DECOQ_KERNEL=scalar|avx2 forces a backend (avx2 silently falls
// back when unsupported).
const Kernels& active();

} // namespace decoq::kern
