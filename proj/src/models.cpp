// models.cpp
#include "decoq/models.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "decoq/eigh.hpp"
#include "decoq/errors.hpp"

namespace decoq {
namespace {

double sz_mean(const QubitStateSpec& q) { return std::cos(q.theta); }

// Normalized cavity amplitudes plus construction leakage.
struct CavityPsi {
    std::vector<cxd> amps;
    double leakage = 0.0;
    int truncation = 0;
};

CavityPsi cavity_initial_state(const CavityThermalSpec& spec) {
    CavityPsi out;
    if (spec.cavity_state.has_value()) {
        if (spec.cavity_state->kind == BosonKind::thermal)
            throw UsageError("cavity_thermal: initial cavity state must be pure "
                             "(thermal cavity states are not admissible here)");
        BosonState st = make_boson(*spec.cavity_state);
        out.amps = st.amplitudes;
        out.leakage = st.leakage;
        out.truncation = spec.cavity_state->truncation;
        return out;
    }
    if (spec.cavity_amplitudes.empty())
        throw UsageError("cavity_thermal: provide cavity_state or explicit amplitudes");
    if (spec.cavity_truncation > 0 &&
        spec.cavity_truncation != static_cast<int>(spec.cavity_amplitudes.size()))
        throw UsageError("cavity_thermal: cavity_truncation does not match the amplitude count");
    out.amps = spec.cavity_amplitudes;
    double n2 = 0.0;
    for (const cxd& a : out.amps) n2 += std::norm(a);
    if (n2 <= 0.0) throw UsageError("cavity_thermal: zero cavity state");
    for (cxd& a : out.amps) a /= std::sqrt(n2);
    out.truncation = static_cast<int>(out.amps.size());
    return out;
}

} // namespace

// ---------------------------------------------------------------- dephasing

BuiltModel build_pure_dephasing(const PureDephasingSpec& spec) {
    if (spec.g < 0.0) throw UsageError("pure_dephasing: coupling g must be >= 0");
    const PauliOps p = pauli_ops();
    const LadderOps l = ladder_ops(spec.boson.truncation);
    BosonState boson = make_boson(spec.boson);

    BuiltModel m;
    SpaceLayout layout({2, spec.boson.truncation});
    m.v0 = QOperator(layout, kron_matrix(p.sz, l.x) * cxd{spec.g, 0.0});
    m.h = m.v0;
    m.ic = InitialCondition{make_qubit(spec.qubit), boson.rho, m.v0};
    m.rho0 = initial_composite_state(m.ic);
    m.truncations = {spec.boson.truncation};
    m.leakage = boson.leakage;
    return m;
}

TdResult td_pure_dephasing(const PureDephasingSpec& spec) {
    if (spec.g < 0.0) throw UsageError("pure_dephasing: coupling g must be >= 0");
    BosonState boson = make_boson(spec.boson);
    const QuadratureStats qs = quadrature_stats(boson.rho);
    const double m = sz_mean(spec.qubit);
    const double s2 = 4.0 * spec.g * spec.g * qs.variance * (1.0 - m * m);
    return td_from_s2(s2);
}

// ------------------------------------------------------------------- cavity

BuiltModel build_cavity_thermal(const CavityThermalSpec& spec) {
    if (spec.modes.empty()) throw UsageError("cavity_thermal: needs at least one bath mode");
    const CavityPsi psi = cavity_initial_state(spec);

    std::vector<int> dims{psi.truncation};
    for (const auto& md : spec.modes) {
        if (md.g < 0.0) throw UsageError("cavity_thermal: couplings must be >= 0");
        if (md.nbar < 0.0) throw UsageError("cavity_thermal: occupations must be >= 0");
        dims.push_back(md.truncation);
    }
    SpaceLayout layout(dims);

    BuiltModel m;
    m.leakage = psi.leakage;
    m.truncations = dims;

    const LadderOps a = ladder_ops(psi.truncation);
    QOperator am = embed(layout, 0, a.b);
    QOperator ad = embed(layout, 0, a.bdag);
    QOperator v0 = QOperator::zero(layout);
    CMatrix rho_r = CMatrix::identity(1);
    for (std::size_t j = 0; j < spec.modes.size(); ++j) {
        const auto& md = spec.modes[j];
        const LadderOps r = ladder_ops(md.truncation);
        QOperator rm = embed(layout, static_cast<int>(j) + 1, r.b);
        QOperator rd = embed(layout, static_cast<int>(j) + 1, r.bdag);
        v0 += cxd{md.g, 0.0} * (am * rd + ad * rm);
        BosonState th = make_boson({BosonKind::thermal, 0, md.nbar, {}, 0.0, md.truncation});
        m.leakage = std::max(m.leakage, th.leakage);
        rho_r = kron_matrix(rho_r, th.rho);
    }

    m.v0 = std::move(v0);
    m.h = m.v0; // frozen V(0); used for short-time validation only
    m.ic = InitialCondition{psi.amps, std::move(rho_r), m.v0};
    m.rho0 = initial_composite_state(m.ic);
    return m;
}

TdResult td_cavity(const CavityThermalSpec& spec) {
    if (spec.modes.empty()) throw UsageError("cavity_thermal: needs at least one bath mode");
    const CavityPsi psi = cavity_initial_state(spec);
    double gamma = 0.0, gamma_t = 0.0;
    for (const auto& md : spec.modes) {
        if (md.g < 0.0) throw UsageError("cavity_thermal: couplings must be >= 0");
        gamma += md.g * md.g;
        gamma_t += md.g * md.g * md.nbar;
    }
    const LadderOps a = ladder_ops(psi.truncation);
    const cxd mean_a = expectation(psi.amps, a.b, psi.amps);
    const double mean_n = expectation(psi.amps, a.bdag * a.b, psi.amps).real();
    const double var = std::max(0.0, mean_n - std::norm(mean_a));
    const double s2 = 4.0 * ((gamma + 2.0 * gamma_t) * var + gamma_t);
    return td_from_s2(s2);
}

// --------------------------------------------------------------- spin-boson

double resolved_nbar(const SpinBosonSpec& spec, const SpinBosonSpec::Mode& mode) {
    if (mode.nbar.has_value()) {
        if (*mode.nbar < 0.0) throw UsageError("spin_boson: nbar must be >= 0");
        return *mode.nbar;
    }
    if (!spec.temperature.has_value())
        throw UsageError("spin_boson: mode occupation needs nbar or a temperature");
    const double kt = *spec.temperature;
    if (kt < 0.0) throw UsageError("spin_boson: temperature must be >= 0");
    if (kt == 0.0) return 0.0;
    if (mode.omega <= 0.0) throw UsageError("spin_boson: mode frequency must be > 0");
    return 1.0 / std::expm1(mode.omega / kt);
}

namespace {

void check_spin_boson(const SpinBosonSpec& spec) {
    if (spec.modes.empty()) throw UsageError("spin_boson: needs at least one mode");
    if (spec.delta_G == 0.0) throw UsageError("spin_boson: delta_G must be nonzero");
    if (spec.omega_rabi < 0.0) throw UsageError("spin_boson: Rabi frequency must be >= 0");
    for (const auto& md : spec.modes) {
        if (md.g < 0.0) throw UsageError("spin_boson: couplings must be >= 0");
        if (md.omega <= 0.0) throw UsageError("spin_boson: mode frequency must be > 0");
    }
}

struct BathPieces {
    SpaceLayout bath_layout;
    CMatrix rho_r;
    std::vector<CMatrix> b_ops, bdag_ops; // embedded on the bath layout
    std::vector<double> nbars;            // analytic occupations
    std::vector<double> nbars_trunc;      // of the constructed states
    double leakage = 0.0;
};

BathPieces build_bath(const SpinBosonSpec& spec) {
    std::vector<int> dims;
    for (const auto& md : spec.modes) dims.push_back(md.truncation);
    BathPieces bp{SpaceLayout(dims), CMatrix::identity(1), {}, {}, {}, {}, 0.0};
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
        const auto& md = spec.modes[k];
        const double nb = resolved_nbar(spec, md);
        bp.nbars.push_back(nb);
        BosonState th = make_boson({BosonKind::thermal, 0, nb, {}, 0.0, md.truncation});
        bp.leakage = std::max(bp.leakage, th.leakage);
        bp.nbars_trunc.push_back(mean_boson_number(th.rho));
        bp.rho_r = kron_matrix(bp.rho_r, th.rho);
        const LadderOps l = ladder_ops(md.truncation);
        bp.b_ops.push_back(embed(bp.bath_layout, static_cast<int>(k), l.b).matrix());
        bp.bdag_ops.push_back(embed(bp.bath_layout, static_cast<int>(k), l.bdag).matrix());
    }
    return bp;
}

} // namespace

std::vector<std::string> spin_boson_validity_warnings(const SpinBosonSpec& spec) {
    check_spin_boson(spec);
    std::vector<std::string> w;
    const double omega_f = spec.delta_G - spec.delta;
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
        const auto& md = spec.modes[k];
        const double delta_k = md.omega - omega_f;
        const double eps_dk = (delta_k != 0.0) ? std::abs(md.g / delta_k)
                                               : std::numeric_limits<double>::infinity();
        const double eps_dg = std::abs(md.g / spec.delta_G);
        if (eps_dk > 0.1 || eps_dg > 0.1) {
            std::ostringstream os;
            os << "dispersive validity: mode " << k << " has epsilon(g/Delta_k)=" << eps_dk
               << ", epsilon(g/Delta_G)=" << eps_dg << " above 0.1";
            w.push_back(os.str());
        }
    }
    return w;
}

QOperator build_spin_boson_full(const SpinBosonSpec& spec) {
    check_spin_boson(spec);
    const PauliOps p = pauli_ops();
    const BathPieces bp = build_bath(spec);
    const int dr = static_cast<int>(bp.bath_layout.total());
    SpaceLayout layout = SpaceLayout::single(2).concat(bp.bath_layout);
    const double omega_f = spec.delta_G - spec.delta;

    CMatrix h = kron_matrix(p.sz * cxd{spec.delta, 0.0}, CMatrix::identity(dr));
    CMatrix bath_free(dr, dr);
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
        const double delta_k = spec.modes[k].omega - omega_f;
        CMatrix num = bp.bdag_ops[k] * bp.b_ops[k];
        bath_free += num * cxd{delta_k, 0.0};
    }
    h += kron_matrix(CMatrix::identity(2), bath_free);
    h += kron_matrix(p.sx * cxd{spec.omega_rabi, 0.0}, CMatrix::identity(dr));
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
        h += kron_matrix(p.sp, bp.b_ops[k]) * cxd{spec.modes[k].g, 0.0};
        h += kron_matrix(p.sm, bp.bdag_ops[k]) * cxd{spec.modes[k].g, 0.0};
    }
    return QOperator(layout, std::move(h));
}

SpinBosonBuild build_spin_boson_eff(const SpinBosonSpec& spec) {
    check_spin_boson(spec);
    const PauliOps p = pauli_ops();
    const BathPieces bp = build_bath(spec);
    const int dr = static_cast<int>(bp.bath_layout.total());
    SpaceLayout layout = SpaceLayout::single(2).concat(bp.bath_layout);
    const double omega_f = spec.delta_G - spec.delta;
    const double dg = spec.delta_G;
    const double omega = spec.omega_rabi;

    SpinBosonBuild out;
    out.truncations = {2};
    for (const auto& md : spec.modes) out.truncations.push_back(md.truncation);
    out.leakage = bp.leakage;
    out.warnings = spin_boson_validity_warnings(spec);

    // Bath-side blocks shared by h_eff, h0 and B(0).
    CMatrix bath_free(dr, dr), bilinear(dr, dr), linear(dr, dr);
    double stark = 0.0, center = 0.0;
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
        const double gk = spec.modes[k].g;
        const double delta_k = spec.modes[k].omega - omega_f;
        bath_free += (bp.bdag_ops[k] * bp.b_ops[k]) * cxd{delta_k, 0.0};
        linear += (bp.b_ops[k] + bp.bdag_ops[k]) * cxd{gk / dg, 0.0};
        for (std::size_t l = 0; l < spec.modes.size(); ++l) {
            const double gl = spec.modes[l].g;
            bilinear += (bp.bdag_ops[k] * bp.b_ops[l]) * cxd{gk * gl / dg, 0.0};
        }
        stark += gk * gk / dg;
        // centered with the constructed mode's occupation, so ⟨B(0)⟩_R = 0
        // holds exactly on the truncated space
        center += gk * gk / dg * bp.nbars_trunc[k];
    }

    const CMatrix eye_r = CMatrix::identity(dr);
    const CMatrix stark_q = p.sp * p.sm; // |1⟩⟨1|

    CMatrix h0 = kron_matrix(p.sz * cxd{spec.delta, 0.0}, eye_r);
    h0 += kron_matrix(CMatrix::identity(2), bath_free);
    h0 += kron_matrix(stark_q * cxd{stark, 0.0}, eye_r);
    out.h0 = QOperator(layout, std::move(h0));

    CMatrix heff = out.h0.matrix();
    heff += kron_matrix(p.sx * cxd{omega, 0.0}, eye_r);
    CMatrix bracket = bilinear;
    CMatrix lin_scaled = linear * cxd{omega, 0.0};
    bracket += lin_scaled;
    heff += kron_matrix(p.sz, bracket) * cxd{2.0, 0.0};
    out.h_eff = QOperator(layout, std::move(heff));

    out.b0 = bilinear;
    out.b0 += linear * cxd{2.0 * omega, 0.0};
    for (int i = 0; i < dr; ++i) out.b0(i, i) -= center;

    CMatrix v0 = kron_matrix(p.sx * cxd{omega, 0.0}, eye_r);
    v0 += kron_matrix(p.sz, out.b0);
    out.v0 = QOperator(layout, std::move(v0));

    out.h_series = out.h0 + out.v0;
    out.ic = InitialCondition{make_qubit(spec.qubit), bp.rho_r, out.v0};
    out.rho0 = initial_composite_state(out.ic);
    return out;
}

double lie_transform_residual(const SpinBosonSpec& spec) {
    check_spin_boson(spec);
    if (spec.modes.size() > 3)
        throw UsageError("lie_transform_residual: at most 3 modes");
    const PauliOps p = pauli_ops();
    const BathPieces bp = build_bath(spec);
    const int dr = static_cast<int>(bp.bath_layout.total());
    const double omega_f = spec.delta_G - spec.delta;

    QOperator h = build_spin_boson_full(spec);
    SpinBosonBuild eff = build_spin_boson_eff(spec);

    // Generator that cancels the coupling at first order: with the Pauli
    // sigma_z in the Hamiltonian, [S, H_free] = -W needs
    // eps_k = g_k / (2*delta - delta_k).
    CMatrix s(2 * dr, 2 * dr);
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
        const double delta_k = spec.modes[k].omega - omega_f;
        const double denom = 2.0 * spec.delta - delta_k;
        if (std::abs(denom) < 1e-12)
            throw UsageError("lie_transform_residual: 2*delta - delta_k vanishes; "
                             "the rotation is singular for mode " + std::to_string(k));
        const double eps = spec.modes[k].g / denom;
        s += kron_matrix(p.sp, bp.b_ops[k]) * cxd{eps, 0.0};
        s -= kron_matrix(p.sm, bp.bdag_ops[k]) * cxd{eps, 0.0};
    }

    // U = exp(S) via the Hermitian matrix M = iS: exp(S) = exp(-iM).
    CMatrix m = s * cxd{0.0, 1.0};
    const EighResult es = eigh(m);
    const int n = m.rows();
    CMatrix ph(n, n);
    for (int i = 0; i < n; ++i)
        ph(i, i) = std::exp(cxd{0.0, -es.eigenvalues[static_cast<std::size_t>(i)]});
    CMatrix u = es.vectors * ph * es.vectors.adjoint();

    CMatrix rotated = u * h.matrix() * u.adjoint();
    rotated -= eff.h_eff.matrix();
    // the difference is Hermitian up to product roundoff scaled by ||H||,
    // which can dwarf a tiny residual; symmetrize before taking the norm
    const int nr = rotated.rows();
    CMatrix sym(nr, nr);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nr; ++j) sym(i, j) = 0.5 * (rotated(i, j) + std::conj(rotated(j, i)));
    const EighResult res = eigh(sym);
    double norm = 0.0;
    for (double w : res.eigenvalues) norm = std::max(norm, std::abs(w));
    return norm;
}

double b2_expectation(const SpinBosonSpec& spec) {
    check_spin_boson(spec);
    const double dg2 = spec.delta_G * spec.delta_G;
    double t1 = 0.0, t2 = 0.0;
    std::vector<double> nb;
    for (const auto& md : spec.modes) nb.push_back(resolved_nbar(spec, md));
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
        const double gk2 = spec.modes[k].g * spec.modes[k].g;
        t1 += gk2 * (2.0 * nb[k] + 1.0);
        for (std::size_t l = 0; l < spec.modes.size(); ++l) {
            const double gl2 = spec.modes[l].g * spec.modes[l].g;
            t2 += gk2 * gl2 * (nb[l] + 1.0) * nb[k];
        }
    }
    return 4.0 * spec.omega_rabi * spec.omega_rabi / dg2 * t1 + t2 / dg2;
}

TdResult td_spin_boson(const SpinBosonSpec& spec) {
    const double m = sz_mean(spec.qubit);
    const double s2 = 4.0 * b2_expectation(spec) * (1.0 - m * m);
    return td_from_s2(s2);
}

double spin_boson_gamma(const SpinBosonSpec& spec) {
    check_spin_boson(spec);
    double gamma = 0.0;
    for (const auto& md : spec.modes) gamma += md.g * md.g / md.omega;
    return gamma;
}

TdResult td_spin_boson_limit(const SpinBosonSpec& spec, FieldRegime regime) {
    check_spin_boson(spec);
    if (!spec.temperature.has_value())
        throw UsageError("td_spin_boson_limit: the high-T limits need a temperature");
    const double kt = *spec.temperature;
    const double gamma = spin_boson_gamma(spec);
    const double m = sz_mean(spec.qubit);
    const double geom = 1.0 - m * m;

    TdResult r;
    double td = std::numeric_limits<double>::infinity();
    if (regime == FieldRegime::strong) {
        const double denom = 4.0 * spec.omega_rabi * std::sqrt(2.0 * kt * gamma * geom);
        if (denom > 0.0) td = spec.delta_G / denom;
    } else {
        const double denom = 2.0 * kt * gamma * std::sqrt(geom);
        if (denom > 0.0) td = spec.delta_G / denom;
    }
    if (std::isinf(td)) {
        r.unbounded = true;
        r.commuting = true;
        return r;
    }
    r.td = td;
    r.s2 = 1.0 / (td * td);
    return r;
}

} // namespace decoq
