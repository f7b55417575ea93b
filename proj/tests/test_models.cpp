// models: the three worked models, closed forms vs the direct-trace route.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "decoq/eigh.hpp"
#include "decoq/errors.hpp"
#include "decoq/models.hpp"

using namespace decoq;

namespace {

const double kPi = std::numbers::pi;

double op_norm(const CMatrix& h) {
    auto es = eigh(h, 1e-9);
    return std::max(std::abs(es.eigenvalues.front()), std::abs(es.eigenvalues.back()));
}

SpinBosonSpec one_mode_spec() {
    SpinBosonSpec s;
    s.delta = 3.0;
    s.delta_G = 10.0;
    s.omega_rabi = 0.1;
    s.modes = {{0.02, 8.0, 0.4, 12}}; // delta_k = omega - omega_f = 8 - 7 = 1
    s.qubit = {kPi / 2.0, 0.0};
    return s;
}

} // namespace

TEST_CASE("pure dephasing: structure, curvature, closed-form t_d") {
    PureDephasingSpec spec{1.0, {kPi / 2.0, 0.0}, {BosonKind::fock, 3, 0.0, {}, 0.0, 10}};
    BuiltModel m = build_pure_dephasing(spec);

    // entries live only on the sigma_z ⊗ (b+b†) pattern: blocks (q,q') with
    // q != q' vanish, and each diagonal block couples n to n±1 only
    const int n = 10;
    for (int q = 0; q < 2; ++q)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const cxd val = m.h.matrix()(q * n + i, q * n + j);
                if (std::abs(i - j) == 1)
                    CHECK(std::abs(val) > 0.0);
                else
                    CHECK(std::abs(val) == 0.0);
                CHECK(std::abs(m.h.matrix()(q * n + i, (1 - q) * n + j)) == 0.0);
            }

    CHECK(s2_direct(m.ic) == doctest::Approx(28.0).epsilon(1e-12));

    PureDephasingSpec off = spec;
    off.g = 0.0;
    CHECK(s2_direct(build_pure_dephasing(off).ic) == doctest::Approx(0.0));

    TdResult td = td_pure_dephasing(spec);
    CHECK(td.td == doctest::Approx(1.0 / (2.0 * std::sqrt(7.0))).epsilon(1e-12));
    CHECK(td.td == doctest::Approx(0.18898).epsilon(1e-4));

    // closed form must equal the direct route
    TdResult via_s2 = td_from_s2(s2_direct(m.ic));
    CHECK(td.td == doctest::Approx(via_s2.td).epsilon(1e-9));
}

TEST_CASE("pure dephasing: squeezed state and pole sentinels") {
    const double r = std::asinh(std::sqrt(3.0));
    PureDephasingSpec spec{1.0, {kPi / 2.0, 0.0}, {BosonKind::squeezed_vacuum, 0, 0.0, {}, r, 120}};
    TdResult td = td_pure_dephasing(spec);
    CHECK(td.td == doctest::Approx(1.86603).epsilon(1e-4));

    TdResult via_s2 = td_from_s2(s2_direct(build_pure_dephasing(spec).ic));
    CHECK(td.td == doctest::Approx(via_s2.td).epsilon(1e-9));

    PureDephasingSpec pole = spec;
    pole.qubit = {0.0, 0.0}; // |1⟩
    CHECK(td_pure_dephasing(pole).unbounded);

    // antipodal Bloch points share t_d exactly
    PureDephasingSpec a = spec, b = spec;
    a.qubit = {0.9, 1.2};
    b.qubit = {kPi - 0.9, std::fmod(1.2 + kPi, 2.0 * kPi)};
    CHECK(td_pure_dephasing(a).td == doctest::Approx(td_pure_dephasing(b).td).epsilon(1e-14));
}

TEST_CASE("cavity model: stability of coherent states and the worked instance") {
    CavityThermalSpec zero_t;
    zero_t.modes = {{0.3, 0.0, 8}, {0.4, 0.0, 8}};
    zero_t.cavity_state = BosonStateSpec{BosonKind::coherent, 0, 0.0, {0.7, -0.1}, 0.0, 14};
    TdResult td0 = td_cavity(zero_t);
    CHECK(td0.unbounded);
    CHECK(std::abs(s2_direct(build_cavity_thermal(zero_t).ic)) < 1e-10);

    CavityThermalSpec warm = zero_t;
    warm.modes = {{0.3, 0.2, 14}, {0.4, 0.1, 14}};
    const double gamma_t = 0.09 * 0.2 + 0.16 * 0.1;
    TdResult tdw = td_cavity(warm);
    CHECK(tdw.td == doctest::Approx(1.0 / (2.0 * std::sqrt(gamma_t))).epsilon(1e-9));

    // Fock n=1 cavity, g={0.3,0.4}, nbar={0.2,0.1}: t_d = 1/(2 sqrt(0.352))
    CavityThermalSpec fock1 = warm;
    fock1.cavity_state = BosonStateSpec{BosonKind::fock, 1, 0.0, {}, 0.0, 10};
    TdResult tdf = td_cavity(fock1);
    CHECK(tdf.td == doctest::Approx(1.0 / (2.0 * std::sqrt(0.352))).epsilon(1e-12));
    CHECK(tdf.td == doctest::Approx(0.84276).epsilon(1e-4));

    TdResult via = td_from_s2(s2_direct(build_cavity_thermal(fock1).ic));
    CHECK(tdf.td == doctest::Approx(via.td).epsilon(2e-5));
}

TEST_CASE("cavity model rejects mixed initial cavity states") {
    CavityThermalSpec bad;
    bad.modes = {{0.3, 0.1, 8}};
    bad.cavity_state = BosonStateSpec{BosonKind::thermal, 0, 1.0, {}, 0.0, 20};
    CHECK_THROWS_AS(td_cavity(bad), UsageError);
    CHECK_THROWS_AS(build_cavity_thermal(bad), UsageError);
}

TEST_CASE("cavity closed form vs direct route on randomized instances") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> gdist(0.05, 0.5), ndist(0.0, 0.5);
    std::uniform_int_distribution<int> mode_count(1, 2);
    for (int trial = 0; trial < 6; ++trial) {
        CavityThermalSpec spec;
        const int nm = mode_count(rng);
        for (int j = 0; j < nm; ++j) {
            const double nbar = ndist(rng);
            // truncation sized so the geometric tail sits well below the
            // 1e-5 route-agreement target
            const double q = nbar / (1.0 + nbar);
            const int trunc =
                (q > 0.0) ? std::max(6, static_cast<int>(std::ceil(std::log(1e-8) / std::log(q))))
                          : 4;
            spec.modes.push_back({gdist(rng), nbar, trunc});
        }
        spec.cavity_state = BosonStateSpec{BosonKind::fock, 1, 0.0, {}, 0.0, 6};
        if (trial % 2 == 0)
            spec.cavity_state = BosonStateSpec{BosonKind::coherent, 0, 0.0, {0.5, 0.3}, 0.0, 12};
        TdResult closed = td_cavity(spec);
        TdResult direct = td_from_s2(s2_direct(build_cavity_thermal(spec).ic));
        CHECK(closed.td == doctest::Approx(direct.td).epsilon(1e-5));
    }
}

TEST_CASE("spin-boson: B(0) structure and thermal centering") {
    SpinBosonSpec s;
    s.delta = 0.0;
    s.delta_G = 10.0;
    s.omega_rabi = 0.0;
    s.modes = {{0.1, 1.0, 0.8, 20}};
    s.qubit = {kPi / 2.0, 0.0};
    SpinBosonBuild b = build_spin_boson_eff(s);

    // Omega=0, single mode: B(0) = (g²/Δ_G)(b†b − ⟨n⟩): diagonal
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
            if (i != j) CHECK(std::abs(b.b0(i, j)) == 0.0);
    const double scale = 0.1 * 0.1 / 10.0;
    CHECK((b.b0(5, 5) - b.b0(4, 4)).real() == doctest::Approx(scale).epsilon(1e-12));

    CHECK(std::abs(trace_product_matrix(b.ic.rho_r, b.b0)) < 1e-10);

    // with a drive and two modes both blocks appear and v0 stays Hermitian
    SpinBosonSpec s2 = s;
    s2.omega_rabi = 0.5;
    s2.modes = {{0.1, 1.0, 0.2, 10}, {0.07, 1.3, 0.1, 10}};
    SpinBosonBuild b2 = build_spin_boson_eff(s2);
    CHECK(b2.v0.is_hermitian());
    CHECK(b2.h_eff.is_hermitian());
    const LadderOps l = ladder_ops(10);
    // linear block: ⟨1|B|0⟩ on mode 1 = 2 Ω g/Δ_G
    CMatrix b_first = partial_trace(QOperator(SpaceLayout({10, 10}), b2.b0) *
                                        cxd{1.0 / 10.0, 0.0},
                                    {0})
                          .matrix(); // scaled partial trace over mode 2
    CHECK(b_first(1, 0).real() == doctest::Approx(2.0 * 0.5 * 0.1 / 10.0).epsilon(1e-10));
    CHECK(std::abs(trace_product_matrix(b2.ic.rho_r, b2.b0)) < 1e-10);
}

TEST_CASE("b2_expectation closed form") {
    SpinBosonSpec s;
    s.delta_G = 10.0;
    s.omega_rabi = 0.0;
    s.modes = {{0.1, 1.0, 0.0, 8}};
    s.qubit = {kPi / 2.0, 0.0};
    CHECK(b2_expectation(s) == doctest::Approx(0.0));

    // worked instance: 4·1·0.01·5/100 + 0.0001·3·2/100 = 2.006e-3
    SpinBosonSpec w = s;
    w.omega_rabi = 1.0;
    w.modes = {{0.1, 1.0, 2.0, 8}};
    CHECK(b2_expectation(w) == doctest::Approx(2.006e-3).epsilon(1e-12));

    // invariant under mode relabeling
    SpinBosonSpec p1 = s, p2 = s;
    p1.omega_rabi = p2.omega_rabi = 0.3;
    p1.modes = {{0.1, 1.0, 0.8, 8}, {0.2, 1.7, 0.3, 8}};
    p2.modes = {{0.2, 1.7, 0.3, 8}, {0.1, 1.0, 0.8, 8}};
    CHECK(b2_expectation(p1) == doctest::Approx(b2_expectation(p2)).epsilon(1e-15));

    // monotone in temperature
    SpinBosonSpec t = s;
    t.omega_rabi = 0.3;
    t.modes = {{0.1, 1.0, std::nullopt, 8}, {0.2, 1.7, std::nullopt, 8}};
    double prev = 0.0;
    for (double kt : {0.5, 1.0, 2.0, 4.0}) {
        t.temperature = kt;
        const double v = b2_expectation(t);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("spin-boson brute-force matrix oracle matches the closed form") {
    SpinBosonSpec s;
    s.delta = 0.0;
    s.delta_G = 5.0;
    s.omega_rabi = 0.3;
    s.modes = {{0.2, 1.0, 1.0, 24}, {0.15, 1.4, 0.7, 24}};
    s.qubit = {kPi / 2.0, 0.0};
    SpinBosonBuild b = build_spin_boson_eff(s);
    const double via_matrix = trace_product_matrix(b.ic.rho_r, b.b0 * b.b0).real();
    CHECK(via_matrix == doctest::Approx(b2_expectation(s)).epsilon(5e-3));
}

TEST_CASE("spin-boson t_d: sentinels and the direct route") {
    SpinBosonSpec s = one_mode_spec();

    SpinBosonSpec pole = s;
    pole.qubit = {0.0, 0.0};
    CHECK(td_spin_boson(pole).unbounded);

    SpinBosonSpec free_spec = s;
    free_spec.modes = {{0.0, 8.0, 0.4, 12}};
    CHECK(td_spin_boson(free_spec).unbounded);

    // full formula vs the direct-trace route (truncation-limited)
    SpinBosonSpec f = s;
    f.modes = {{0.05, 8.0, 0.6, 20}};
    f.omega_rabi = 0.2;
    SpinBosonBuild b = build_spin_boson_eff(f);
    TdResult closed = td_spin_boson(f);
    TdResult direct = td_from_s2(s2_direct(b.ic));
    CHECK(closed.td == doctest::Approx(direct.td).epsilon(0.01));

    // the local drive alone cannot decohere: kill the bath coupling inside v0
    SpinBosonSpec drive_only = f;
    drive_only.modes = {{0.0, 8.0, 0.6, 16}};
    SpinBosonBuild b0 = build_spin_boson_eff(drive_only);
    CHECK(s2_direct(b0.ic) == doctest::Approx(0.0));
}

TEST_CASE("high-temperature limit formulas scale as 1/sqrt(T) and 1/T") {
    SpinBosonSpec s = one_mode_spec();
    s.temperature = 100.0;
    s.modes = {{0.01, 1.0, std::nullopt, 8}};
    s.omega_rabi = 1.0;

    TdResult strong1 = td_spin_boson_limit(s, FieldRegime::strong);
    TdResult weak1 = td_spin_boson_limit(s, FieldRegime::weak);
    s.temperature = 200.0;
    TdResult strong2 = td_spin_boson_limit(s, FieldRegime::strong);
    TdResult weak2 = td_spin_boson_limit(s, FieldRegime::weak);

    CHECK(strong2.td / strong1.td == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.02));
    CHECK(weak2.td / weak1.td == doctest::Approx(0.5).epsilon(0.02));

    SpinBosonSpec no_t = s;
    no_t.temperature.reset();
    no_t.modes = {{0.01, 1.0, 0.5, 8}};
    CHECK_THROWS_AS(td_spin_boson_limit(no_t, FieldRegime::strong), UsageError);
}

TEST_CASE("dispersive validity warnings trigger exactly above epsilon = 0.1") {
    SpinBosonSpec ok = one_mode_spec(); // eps = 0.02/1 = 0.02, g/delta_G = 0.002
    CHECK(spin_boson_validity_warnings(ok).empty());

    SpinBosonSpec hot = ok;
    hot.modes = {{0.15, 8.0, 0.4, 12}}; // g/delta_k = 0.15 > 0.1
    CHECK(spin_boson_validity_warnings(hot).size() == 1);
    CHECK(build_spin_boson_eff(hot).warnings.size() == 1);

    SpinBosonSpec edge = ok;
    edge.modes = {{0.0999, 8.0, 0.4, 12}};
    CHECK(spin_boson_validity_warnings(edge).empty());
}

TEST_CASE("lie rotation: zero coupling, quadratic residual scaling, norm bound") {
    SpinBosonSpec off = one_mode_spec();
    off.modes = {{0.0, 8.0, 0.4, 12}};
    CHECK(lie_transform_residual(off) == doctest::Approx(0.0));

    SpinBosonSpec s = one_mode_spec(); // g=0.02, delta_k=1, Omega=0.1
    const double r1 = lie_transform_residual(s);
    SpinBosonSpec half = s;
    half.modes = {{0.01, 8.0, 0.4, 12}};
    const double r2 = lie_transform_residual(half);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.25));

    const double hnorm = op_norm(build_spin_boson_full(s).matrix());
    CHECK(r1 <= 1e-2 * hnorm);
    // regression value for this instance
    CHECK(r1 == doctest::Approx(9.2008e-4).epsilon(1e-3));

    SpinBosonSpec too_many = s;
    too_many.modes = {{0.02, 8.0, 0.4, 4}, {0.02, 8.5, 0.4, 4}, {0.02, 9.0, 0.4, 4},
                      {0.02, 9.5, 0.4, 4}};
    CHECK_THROWS_AS(lie_transform_residual(too_many), UsageError);
}

TEST_CASE("spin-boson occupations resolve from explicit nbar or Bose factors") {
    SpinBosonSpec s = one_mode_spec();
    CHECK(resolved_nbar(s, s.modes[0]) == doctest::Approx(0.4));

    SpinBosonSpec t = s;
    t.modes = {{0.02, 2.0, std::nullopt, 12}};
    t.temperature = 4.0;
    CHECK(resolved_nbar(t, t.modes[0]) == doctest::Approx(1.0 / std::expm1(0.5)).epsilon(1e-14));
    t.temperature = 0.0;
    CHECK(resolved_nbar(t, t.modes[0]) == doctest::Approx(0.0));
    t.temperature.reset();
    CHECK_THROWS_AS(resolved_nbar(t, t.modes[0]), UsageError);
}
