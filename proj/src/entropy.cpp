// entropy.cpp
#include "decoq/entropy.hpp"

#include <cmath>
#include <sstream>

#include "decoq/errors.hpp"
#include "decoq/kernels.hpp"

namespace decoq {
namespace {

constexpr double kNegativeNoiseFloor = -1e-10;

CMatrix projector(const std::vector<cxd>& psi) {
    const int n = static_cast<int>(psi.size());
    CMatrix p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            p(i, j) = psi[static_cast<std::size_t>(i)] * std::conj(psi[static_cast<std::size_t>(j)]);
    return p;
}

std::vector<int> r_factors(const SpaceLayout& l) {
    std::vector<int> r;
    for (int i = 1; i < l.factors(); ++i) r.push_back(i);
    return r;
}

double clamp_curvature(double s2) {
    if (s2 < kNegativeNoiseFloor) {
        std::ostringstream os;
        os << "second entropy derivative came out negative beyond noise: " << s2;
        throw InternalConsistencyError(os.str());
    }
    return (s2 < 0.0) ? 0.0 : s2;
}

} // namespace

void validate_initial_condition(const InitialCondition& ic) {
    const SpaceLayout& l = ic.v0.layout();
    if (l.factors() < 2)
        throw UsageError("InitialCondition: layout needs a system factor and at least one R factor");
    if (static_cast<int>(ic.psi.size()) != l.dim(0))
        throw UsageError("InitialCondition: psi does not match the first layout factor");
    const double nrm2 =
        kern::active().sum_abs2(ic.psi.data(), ic.psi.size());
    if (std::abs(nrm2 - 1.0) > 1e-12)
        throw UsageError("InitialCondition: psi is not normalized");
    long dr = 1;
    for (int i = 1; i < l.factors(); ++i) dr *= l.dim(i);
    if (ic.rho_r.rows() != dr || !ic.rho_r.square())
        throw UsageError("InitialCondition: rho_r does not match the R factors");
    if (!ic.v0.is_hermitian(1e-12))
        throw ValidationError("InitialCondition: V(0) is not Hermitian");
}

QOperator initial_composite_state(const InitialCondition& ic) {
    validate_initial_condition(ic);
    return QOperator(ic.v0.layout(), kron_matrix(projector(ic.psi), ic.rho_r));
}

double linear_entropy(const CMatrix& rho) {
    // tr rho^2 = sum |rho_ij|^2 for Hermitian rho
    return 1.0 - sum_abs2(rho);
}

double linear_entropy(const QOperator& rho) { return linear_entropy(rho.matrix()); }

double s2_direct(const InitialCondition& ic) {
    const QOperator rho0 = initial_composite_state(ic);
    const QOperator& v = ic.v0;
    const std::vector<int> keep{0};

    QOperator c1 = commutator(v, rho0);
    QOperator d1 = partial_trace(c1, keep) * cxd{0.0, -1.0};
    QOperator c2 = commutator(v, c1);
    QOperator d2 = partial_trace(c2, keep) * cxd{-1.0, 0.0};

    const double t1 = trace_product_matrix(d1.matrix(), d1.matrix()).real();
    const double t2 = expectation(ic.psi, d2.matrix(), ic.psi).real();
    return clamp_curvature(-2.0 * (t1 + t2));
}

double s2_eq3(const InitialCondition& ic) {
    validate_initial_condition(ic);
    const SpaceLayout& l = ic.v0.layout();
    const std::vector<int> keep{0};
    const std::vector<int> rf = r_factors(l);

    // I ⊗ rho_r and P ⊗ I on the composite space
    CMatrix weight = kron_matrix(CMatrix::identity(l.dim(0)), ic.rho_r);
    QOperator w(l, std::move(weight));
    QOperator pfull(l, kron_matrix(projector(ic.psi), CMatrix::identity(static_cast<int>(ic.rho_r.rows()))));

    QOperator comm = commutator(ic.v0, pfull);
    QOperator avg_vcomm = partial_trace(w * (ic.v0 * comm), keep);
    QOperator avg_v = partial_trace(w * ic.v0, keep);
    QOperator avg_comm = partial_trace(w * comm, keep);

    CMatrix m = avg_vcomm.matrix() - avg_v.matrix() * avg_comm.matrix();
    const double val = 4.0 * expectation(ic.psi, m, ic.psi).real();
    return clamp_curvature(val);
}

TdResult td_from_s2(double s2, double s2_floor) {
    if (s2 < kNegativeNoiseFloor)
        throw InternalConsistencyError("td_from_s2: negative s2 beyond noise");
    TdResult r;
    r.s2 = (s2 < 0.0) ? 0.0 : s2;
    if (r.s2 <= s2_floor) {
        r.unbounded = true;
        r.commuting = true;
        return r;
    }
    r.td = 1.0 / std::sqrt(r.s2);
    return r;
}

namespace {

// Finite-difference weights on nodes x[0..m-1] for the d-th derivative at 0:
// solve sum_j w_j x_j^k = k! delta_{k,d}, k = 0..m-1.
std::vector<double> fd_weights(const std::vector<double>& x, int d) {
    const int m = static_cast<int>(x.size());
    std::vector<double> a(static_cast<std::size_t>(m) * m), rhs(static_cast<std::size_t>(m), 0.0);
    double fact = 1.0;
    for (int k = 0; k < m; ++k) {
        if (k > 0) fact *= k;
        if (k == d) rhs[static_cast<std::size_t>(k)] = fact;
        for (int j = 0; j < m; ++j)
            a[static_cast<std::size_t>(k) * m + j] = std::pow(x[static_cast<std::size_t>(j)], k);
    }
    // Gaussian elimination with partial pivoting (m <= 6)
    std::vector<int> piv(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) piv[static_cast<std::size_t>(i)] = i;
    for (int c = 0; c < m; ++c) {
        int best = c;
        for (int rr = c + 1; rr < m; ++rr)
            if (std::abs(a[static_cast<std::size_t>(rr) * m + c]) >
                std::abs(a[static_cast<std::size_t>(best) * m + c]))
                best = rr;
        for (int j = 0; j < m; ++j)
            std::swap(a[static_cast<std::size_t>(c) * m + j], a[static_cast<std::size_t>(best) * m + j]);
        std::swap(rhs[static_cast<std::size_t>(c)], rhs[static_cast<std::size_t>(best)]);
        const double pivot = a[static_cast<std::size_t>(c) * m + c];
        for (int rr = c + 1; rr < m; ++rr) {
            const double f = a[static_cast<std::size_t>(rr) * m + c] / pivot;
            if (f == 0.0) continue;
            for (int j = c; j < m; ++j)
                a[static_cast<std::size_t>(rr) * m + j] -= f * a[static_cast<std::size_t>(c) * m + j];
            rhs[static_cast<std::size_t>(rr)] -= f * rhs[static_cast<std::size_t>(c)];
        }
    }
    std::vector<double> wsol(static_cast<std::size_t>(m));
    for (int rr = m - 1; rr >= 0; --rr) {
        double s = rhs[static_cast<std::size_t>(rr)];
        for (int j = rr + 1; j < m; ++j)
            s -= a[static_cast<std::size_t>(rr) * m + j] * wsol[static_cast<std::size_t>(j)];
        wsol[static_cast<std::size_t>(rr)] = s / a[static_cast<std::size_t>(rr) * m + rr];
    }
    return wsol;
}

double one_sided_estimate(const std::vector<double>& values, double h, int stride, int order) {
    const int m = order + 2; // second-order-accurate one-sided stencil
    // Solve on dimensionless nodes {0, stride, 2*stride, ...} (well
    // conditioned), then scale the weights by h^-order.
    std::vector<double> x(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) x[static_cast<std::size_t>(j)] = static_cast<double>(stride * j);
    const std::vector<double> w = fd_weights(x, order);
    double acc = 0.0;
    for (int j = 0; j < m; ++j)
        acc += w[static_cast<std::size_t>(j)] * values[static_cast<std::size_t>(j) * stride];
    return acc / std::pow(h, order);
}

} // namespace

FdEstimate fd_derivative(const std::vector<double>& times, const std::vector<double>& values,
                         int order, double tolerance) {
    if (order < 1 || order > 4) throw UsageError("fd_derivative: order must be in 1..4");
    const std::size_t need = 2 * static_cast<std::size_t>(order) + 3;
    if (times.size() != values.size() || times.size() < need)
        throw UsageError("fd_derivative: need at least 2n+3 samples on a uniform grid");
    if (std::abs(times[0]) > 1e-12)
        throw UsageError("fd_derivative: grid must start at t = 0");
    const double h = times[1] - times[0];
    if (!(h > 0.0)) throw UsageError("fd_derivative: grid step must be positive");
    for (std::size_t i = 1; i + 1 < times.size(); ++i)
        if (std::abs((times[i + 1] - times[i]) - h) > 1e-9 * h)
            throw UsageError("fd_derivative: grid is not uniform");

    const double d_h = one_sided_estimate(values, h, 1, order);
    const double d_2h = one_sided_estimate(values, h, 2, order);
    FdEstimate est;
    est.value = (4.0 * d_h - d_2h) / 3.0; // p = 2 Richardson step
    est.error_indicator = std::abs(d_h - d_2h);
    if (est.error_indicator > tolerance) {
        std::ostringstream os;
        os << "fd_derivative: error indicator " << est.error_indicator << " exceeds tolerance "
           << tolerance << "; sample the series on a finer grid near t = 0";
        throw PrecisionError(os.str());
    }
    return est;
}

FdEstimate fd_derivative(const EntropySeries& series, int order, double tolerance) {
    return fd_derivative(series.times, series.values, order, tolerance);
}

} // namespace decoq
