// linalg core: eigendecomposition, kron, partial trace, unitary evolution.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "decoq/eigh.hpp"
#include "decoq/errors.hpp"
#include "decoq/qoperator.hpp"
#include "decoq/states.hpp"

using namespace decoq;

namespace {

CMatrix random_hermitian(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = g(rng);
        for (int j = i + 1; j < n; ++j) {
            a(i, j) = cxd{g(rng), g(rng)};
            a(j, i) = std::conj(a(i, j));
        }
    }
    return a;
}

CMatrix random_density(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cxd{g(rng), g(rng)};
    CMatrix rho = a * a.adjoint();
    rho *= cxd{1.0 / rho.trace().real(), 0.0};
    return rho;
}

CMatrix random_matrix(std::mt19937_64& rng, int n, int m) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix a(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = cxd{g(rng), g(rng)};
    return a;
}

double max_entry_diff(const CMatrix& a, const CMatrix& b) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

std::vector<double> sorted_eigenvalues(const CMatrix& h) {
    auto es = eigh(h);
    return es.eigenvalues;
}

} // namespace

TEST_CASE("eigh reproduces known small spectra") {
    const PauliOps p = pauli_ops();
    auto es = eigh(p.sx);
    CHECK(es.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(es.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

    // number operator: already diagonal
    CMatrix num(6, 6);
    for (int i = 0; i < 6; ++i) num(i, i) = static_cast<double>(i);
    es = eigh(num);
    for (int i = 0; i < 6; ++i) CHECK(es.eigenvalues[i] == doctest::Approx(i).epsilon(1e-14));

    // analytic 2x2
    CMatrix h(2, 2);
    h(0, 0) = 0.7;
    h(1, 1) = -0.4;
    h(0, 1) = cxd{0.3, 0.9};
    h(1, 0) = std::conj(h(0, 1));
    const double mid = (0.7 - 0.4) / 2.0;
    const double rad = std::sqrt(std::pow((0.7 + 0.4) / 2.0, 2) + std::norm(h(0, 1)));
    es = eigh(h);
    CHECK(es.eigenvalues[0] == doctest::Approx(mid - rad).epsilon(1e-13));
    CHECK(es.eigenvalues[1] == doctest::Approx(mid + rad).epsilon(1e-13));
}

TEST_CASE("eigh on random Hermitian matrices: reconstruction, unitarity, trace identities") {
    std::mt19937_64 rng(23);
    for (int n : {1, 2, 3, 5, 17, 40, 90}) {
        CMatrix a = random_hermitian(rng, n);
        auto es = eigh(a);

        for (int i = 0; i + 1 < n; ++i) CHECK(es.eigenvalues[i] <= es.eigenvalues[i + 1]);

        CMatrix lam = CMatrix(n, n);
        for (int i = 0; i < n; ++i) lam(i, i) = es.eigenvalues[i];
        CMatrix rec = es.vectors * lam * es.vectors.adjoint();
        CHECK(max_entry_diff(rec, a) < 1e-12 * std::max(1.0, a.max_abs()) * n);

        CMatrix qtq = es.vectors.adjoint() * es.vectors;
        CHECK(max_entry_diff(qtq, CMatrix::identity(n)) < 1e-13 * n);

        double trace_sum = 0.0, sq_sum = 0.0;
        for (double w : es.eigenvalues) {
            trace_sum += w;
            sq_sum += w * w;
        }
        CHECK(trace_sum == doctest::Approx(a.trace().real()).epsilon(1e-11));
        CHECK(sq_sum == doctest::Approx(sum_abs2(a)).epsilon(1e-11));
    }
}

TEST_CASE("eigh handles degenerate spectra") {
    CMatrix eye = CMatrix::identity(7);
    auto es = eigh(eye);
    for (double w : es.eigenvalues) CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_entry_diff(es.vectors.adjoint() * es.vectors, CMatrix::identity(7)) < 1e-13);
}

TEST_CASE("eigh rejects non-Hermitian input") {
    CMatrix a(2, 2);
    a(0, 1) = 1.0; // no conjugate partner
    CHECK_THROWS_AS(eigh(a), ValidationError);
}

TEST_CASE("kron identity cases") {
    QOperator i2 = QOperator::identity(SpaceLayout::single(2));
    QOperator i3 = QOperator::identity(SpaceLayout::single(3));
    QOperator i6 = kron(i2, i3);
    CHECK(i6.layout().dims() == std::vector<int>{2, 3});
    CHECK(max_entry_diff(i6.matrix(), CMatrix::identity(6)) == 0.0);

    const PauliOps p = pauli_ops();
    QOperator szi = kron(QOperator(SpaceLayout::single(2), p.sz), i2);
    for (int i = 0; i < 4; ++i)
        CHECK(szi.matrix()(i, i).real() == doctest::Approx(i < 2 ? 1.0 : -1.0));
}

TEST_CASE("kron matches the index rule on random matrices") {
    std::mt19937_64 rng(31);
    CMatrix a = random_matrix(rng, 2, 2), b = random_matrix(rng, 3, 3);
    CMatrix k = kron_matrix(a, b);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int kk = 0; kk < 3; ++kk)
                for (int l = 0; l < 3; ++l)
                    CHECK(std::abs(k(i * 3 + kk, j * 3 + l) - a(i, j) * b(kk, l)) < 1e-15);
}

TEST_CASE("kron above the dimension cap raises a capacity error") {
    // 70*70 = 4900 > default cap 4096
    CHECK_THROWS_AS(SpaceLayout({70, 70}), CapacityError);
    QOperator a = QOperator::identity(SpaceLayout::single(70));
    CHECK_THROWS_AS(kron(a, a), CapacityError);
}

TEST_CASE("partial trace: product states, Bell state, construct-and-compare") {
    std::mt19937_64 rng(37);
    const std::vector<cxd> psi = make_qubit({1.1, 0.4});
    CMatrix p(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p(i, j) = psi[i] * std::conj(psi[j]);
    CMatrix rho_r = random_density(rng, 3);

    QOperator joint = kron(QOperator(SpaceLayout::single(2), p),
                           QOperator(SpaceLayout::single(3), rho_r));
    QOperator a = partial_trace(joint, {0});
    CHECK(max_entry_diff(a.matrix(), p) < 1e-12);
    QOperator b = partial_trace(joint, {1});
    CHECK(max_entry_diff(b.matrix(), rho_r) < 1e-12);
    CHECK(std::abs(a.matrix().trace() - joint.matrix().trace()) < 1e-12);

    // Bell state on 2⊗2, keep first → I/2
    CMatrix bell(4, 4);
    const cxd h{0.5, 0.0};
    for (int i : {0, 3})
        for (int j : {0, 3}) bell(i, j) = h;
    QOperator rho_bell(SpaceLayout({2, 2}), bell);
    QOperator first = partial_trace(rho_bell, {0});
    CHECK(max_entry_diff(first.matrix(), CMatrix::identity(2) * cxd{0.5, 0.0}) < 1e-15);
}

TEST_CASE("partial trace composition and error paths") {
    std::mt19937_64 rng(41);
    CMatrix r2 = random_density(rng, 2), r3 = random_density(rng, 3), r4 = random_density(rng, 4);
    QOperator joint = kron(kron(QOperator(SpaceLayout::single(2), r2),
                                QOperator(SpaceLayout::single(3), r3)),
                           QOperator(SpaceLayout::single(4), r4));
    QOperator two_step = partial_trace(partial_trace(joint, {0, 1}), {0});
    QOperator one_step = partial_trace(joint, {0});
    CHECK(max_entry_diff(two_step.matrix(), one_step.matrix()) < 1e-13);
    CHECK(max_entry_diff(one_step.matrix(), r2) < 1e-12);

    CHECK_THROWS_AS(partial_trace(joint, {}), UsageError);
    CHECK_THROWS_AS(partial_trace(joint, {3}), UsageError);
}

TEST_CASE("commutator and trace_of_product basics") {
    const PauliOps p = pauli_ops();
    const SpaceLayout q = SpaceLayout::single(2);
    QOperator sx(q, p.sx), sz(q, p.sz);

    CHECK(commutator(sx, sx).matrix().max_abs() == 0.0);

    CMatrix sy(2, 2);
    sy(0, 1) = cxd{0.0, -1.0};
    sy(1, 0) = cxd{0.0, 1.0};
    QOperator c = commutator(sx, QOperator(q, sy));
    CMatrix expect = p.sz * cxd{0.0, 2.0};
    CHECK(max_entry_diff(c.matrix(), expect) < 1e-15);

    std::mt19937_64 rng(43);
    QOperator rho(q, random_density(rng, 2));
    CHECK(trace_of_product(QOperator::identity(q), rho).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(trace_of_product(rho, QOperator::identity(SpaceLayout::single(3))), UsageError);
}

TEST_CASE("evolve_unitary: identity at t=0, Larmor phase, commuting case") {
    const PauliOps p = pauli_ops();
    const SpaceLayout q = SpaceLayout::single(2);
    const std::vector<cxd> plus = make_qubit({std::numbers::pi / 2.0, 0.0});
    CMatrix rho_plus(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rho_plus(i, j) = plus[i] * std::conj(plus[j]);
    QOperator rho0(q, rho_plus), h(q, p.sz);

    QOperator same = evolve_unitary(rho0, h, 0.0);
    CHECK(max_entry_diff(same.matrix(), rho_plus) < 1e-14);

    const double t = std::numbers::pi / 4.0;
    QOperator rt = evolve_unitary(rho0, h, t);
    // off-diagonal picks up e^{-2it} = e^{-i pi/2}; ⟨σ_x⟩ = cos(2t) = 0
    const cxd off = rt.matrix()(0, 1);
    CHECK(std::abs(off - cxd{0.5, 0.0} * std::exp(cxd{0.0, -2.0 * t})) < 1e-12);
    CHECK(std::abs(trace_of_product(rt, QOperator(q, p.sx)).real()) < 1e-12);

    // Fock state under the number Hamiltonian: [H, rho0] = 0
    const int n = 8;
    CMatrix num(n, n);
    for (int i = 0; i < n; ++i) num(i, i) = static_cast<double>(i);
    BosonState fock = make_boson({BosonKind::fock, 3, 0, {}, 0, n});
    QOperator rho_f(SpaceLayout::single(n), fock.rho);
    QOperator evolved = evolve_unitary(rho_f, QOperator(SpaceLayout::single(n), num), 2.7);
    CHECK(max_entry_diff(evolved.matrix(), fock.rho) < 1e-12);
}

TEST_CASE("evolve_unitary preserves spectrum, trace, hermiticity; propagator is unitary") {
    std::mt19937_64 rng(47);
    const SpaceLayout l({2, 3});
    CMatrix h = random_hermitian(rng, 6);
    CMatrix rho = random_density(rng, 6);
    QOperator rt = evolve_unitary(QOperator(l, rho), QOperator(l, h), 0.83);

    CHECK(std::abs(rt.matrix().trace() - cxd{1.0, 0.0}) < 1e-10);
    CHECK(rt.matrix().hermiticity_defect() < 1e-10);

    auto w0 = sorted_eigenvalues(rho);
    auto w1 = sorted_eigenvalues(rt.matrix());
    for (std::size_t i = 0; i < w0.size(); ++i)
        CHECK(std::abs(w0[i] - w1[i]) < 1e-9);

    // explicit propagator unitarity: U = V e^{-i w t} V†
    auto es = eigh(h);
    CMatrix ph(6, 6);
    for (int i = 0; i < 6; ++i) ph(i, i) = std::exp(cxd{0.0, -es.eigenvalues[i] * 0.83});
    CMatrix u = es.vectors * ph * es.vectors.adjoint();
    CHECK(max_entry_diff(u.adjoint() * u, CMatrix::identity(6)) < 1e-10);

    CMatrix nh(2, 2);
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(evolve_unitary(QOperator(SpaceLayout::single(2), random_density(rng, 2)),
                                   QOperator(SpaceLayout::single(2), nh), 1.0),
                    ValidationError);
}
