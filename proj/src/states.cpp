// states.cpp
#include "decoq/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "decoq/errors.hpp"
#include "decoq/kernels.hpp"

namespace decoq {
namespace {

constexpr int kMaxScanLevels = 1 << 16;

CMatrix rho_from_amplitudes(const std::vector<cxd>& c) {
    const int n = static_cast<int>(c.size());
    CMatrix rho(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rho(i, j) = c[static_cast<std::size_t>(i)] * std::conj(c[static_cast<std::size_t>(j)]);
    return rho;
}

// Squared Fock amplitudes of a coherent state, generated incrementally.
// |c_n|^2 = e^{-|α|²} |α|^{2n} / n!
double coherent_p_next(double p_prev, double a2, int n) { return p_prev * a2 / n; }

[[noreturn]] void throw_truncation(const BosonStateSpec& spec, int advised) {
    std::ostringstream os;
    os << "make_boson(" << to_string(spec.kind) << "): truncation " << spec.truncation
       << " leaks more than leak_tol=" << spec.leak_tol << "; use at least N=" << advised;
    throw TruncationError(os.str(), advised);
}

} // namespace

std::string to_string(BosonKind k) {
    switch (k) {
        case BosonKind::fock: return "fock";
        case BosonKind::thermal: return "thermal";
        case BosonKind::coherent: return "coherent";
        case BosonKind::squeezed_vacuum: return "squeezed_vacuum";
    }
    return "?";
}

PauliOps pauli_ops() {
    PauliOps p{CMatrix(2, 2), CMatrix(2, 2), CMatrix(2, 2), CMatrix(2, 2)};
    p.sz(0, 0) = 1.0;
    p.sz(1, 1) = -1.0;
    p.sp(0, 1) = 1.0; // |1⟩⟨0|
    p.sm(1, 0) = 1.0;
    p.sx(0, 1) = 1.0;
    p.sx(1, 0) = 1.0;
    return p;
}

std::vector<cxd> make_qubit(const QubitStateSpec& spec) {
    if (!(spec.theta >= 0.0 && spec.theta <= std::numbers::pi))
        throw UsageError("make_qubit: theta must lie in [0, pi]");
    if (!(spec.phi >= 0.0 && spec.phi < 2.0 * std::numbers::pi))
        throw UsageError("make_qubit: phi must lie in [0, 2*pi)");
    const double c = std::cos(spec.theta / 2.0), s = std::sin(spec.theta / 2.0);
    return {cxd{c, 0.0}, cxd{s * std::cos(spec.phi), s * std::sin(spec.phi)}};
}

LadderOps ladder_ops(int n_levels) {
    if (n_levels < 1) throw UsageError("ladder_ops: need at least one level");
    LadderOps l{CMatrix(n_levels, n_levels), CMatrix(n_levels, n_levels),
                CMatrix(n_levels, n_levels)};
    for (int n = 1; n < n_levels; ++n) {
        const double v = std::sqrt(static_cast<double>(n));
        l.b(n - 1, n) = v;
        l.bdag(n, n - 1) = v;
        l.x(n - 1, n) = v;
        l.x(n, n - 1) = v;
    }
    return l;
}

BosonState make_boson(const BosonStateSpec& spec) {
    const int n = spec.truncation;
    if (n < 1) throw UsageError("make_boson: truncation must be >= 1");
    if (!(spec.leak_tol > 0.0)) throw UsageError("make_boson: leak_tol must be > 0");

    BosonState out;
    switch (spec.kind) {
        case BosonKind::fock: {
            if (spec.fock_n < 0) throw UsageError("make_boson: fock n must be >= 0");
            if (spec.fock_n >= n) throw_truncation(spec, spec.fock_n + 1);
            out.pure = true;
            out.leakage = 0.0;
            out.amplitudes.assign(static_cast<std::size_t>(n), cxd{0.0, 0.0});
            out.amplitudes[static_cast<std::size_t>(spec.fock_n)] = 1.0;
            out.rho = rho_from_amplitudes(out.amplitudes);
            return out;
        }
        case BosonKind::thermal: {
            if (spec.nbar < 0.0) throw UsageError("make_boson: thermal nbar must be >= 0");
            const double q = spec.nbar / (1.0 + spec.nbar); // p_n = (1-q) q^n
            std::vector<double> p(static_cast<std::size_t>(n));
            double tr = 0.0, pn = 1.0 / (1.0 + spec.nbar);
            for (int i = 0; i < n; ++i) {
                p[static_cast<std::size_t>(i)] = pn;
                tr += pn;
                pn *= q;
            }
            out.leakage = 1.0 - tr;
            if (out.leakage > spec.leak_tol) {
                const int advised =
                    (q > 0.0) ? static_cast<int>(std::ceil(std::log(spec.leak_tol) / std::log(q))) + 1 : n;
                throw_truncation(spec, advised);
            }
            out.pure = false;
            out.renorm_factor = 1.0 / tr;
            out.rho = CMatrix(n, n);
            for (int i = 0; i < n; ++i) out.rho(i, i) = p[static_cast<std::size_t>(i)] / tr;
            return out;
        }
        case BosonKind::coherent: {
            const double a2 = std::norm(spec.alpha);
            std::vector<cxd> c(static_cast<std::size_t>(n));
            cxd cn = std::exp(-0.5 * a2);
            double tr = 0.0;
            for (int i = 0; i < n; ++i) {
                c[static_cast<std::size_t>(i)] = cn;
                tr += std::norm(cn);
                cn *= spec.alpha / std::sqrt(static_cast<double>(i + 1));
            }
            out.leakage = 1.0 - tr;
            if (out.leakage > spec.leak_tol) {
                // scan the |c_n|² tail for the first adequate truncation
                double cum = 0.0, pn2 = std::exp(-a2);
                int advised = n;
                for (int i = 0; i < kMaxScanLevels; ++i) {
                    cum += pn2;
                    if (1.0 - cum <= spec.leak_tol) { advised = i + 1; break; }
                    pn2 = coherent_p_next(pn2, a2, i + 1);
                }
                throw_truncation(spec, advised);
            }
            out.pure = true;
            out.renorm_factor = 1.0 / std::sqrt(tr);
            for (auto& z : c) z *= out.renorm_factor;
            out.amplitudes = std::move(c);
            out.rho = rho_from_amplitudes(out.amplitudes);
            return out;
        }
        case BosonKind::squeezed_vacuum: {
            // S(r)|0⟩: even levels only, c_{2m}/c_{2m-2} = -tanh(r)·sqrt((2m-1)/(2m)).
            const double t = std::tanh(spec.r);
            std::vector<cxd> c(static_cast<std::size_t>(n), cxd{0.0, 0.0});
            double amp = 1.0 / std::sqrt(std::cosh(spec.r));
            double tr = 0.0;
            for (int m = 0; 2 * m < n; ++m) {
                if (m > 0) amp *= -t * std::sqrt((2.0 * m - 1.0) / (2.0 * m));
                c[static_cast<std::size_t>(2 * m)] = amp;
                tr += amp * amp;
            }
            out.leakage = 1.0 - tr;
            if (out.leakage > spec.leak_tol) {
                double cum = 0.0, a = 1.0 / std::sqrt(std::cosh(spec.r));
                int advised = n;
                for (int m = 0; 2 * m < kMaxScanLevels; ++m) {
                    if (m > 0) a *= -t * std::sqrt((2.0 * m - 1.0) / (2.0 * m));
                    cum += a * a;
                    if (1.0 - cum <= spec.leak_tol) { advised = 2 * m + 1; break; }
                }
                throw_truncation(spec, advised);
            }
            out.pure = true;
            out.renorm_factor = 1.0 / std::sqrt(tr);
            for (auto& z : c) z *= out.renorm_factor;
            out.amplitudes = std::move(c);
            out.rho = rho_from_amplitudes(out.amplitudes);
            return out;
        }
    }
    throw UsageError("make_boson: unknown kind");
}

QuadratureStats quadrature_stats(const CMatrix& rho_b) {
    if (!rho_b.square()) throw UsageError("quadrature_stats: non-square state");
    const int n = rho_b.rows();
    const LadderOps l = ladder_ops(n);
    const double mean = trace_product_matrix(rho_b, l.x).real();
    const CMatrix x2 = l.x * l.x;
    const double m2 = trace_product_matrix(rho_b, x2).real();
    return {mean, std::max(0.0, m2 - mean * mean)};
}

double mean_boson_number(const CMatrix& rho_b) {
    double acc = 0.0;
    for (int i = 0; i < rho_b.rows(); ++i) acc += i * rho_b(i, i).real();
    return acc;
}

} // namespace decoq
