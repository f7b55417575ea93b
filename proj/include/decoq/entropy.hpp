// entropy.hpp — linear entropy, the analytic second derivative s2(0) in its
// direct-trace and operator-correlation forms, t_d extraction, and a
// finite-difference derivative estimator used as the numerical oracle.
#pragma once

#include <limits>
#include <vector>

#include "decoq/qoperator.hpp"
#include "decoq/series.hpp"

namespace decoq {

/// Initial data for the short-time curvature: system a (first layout factor)
/// in the pure state psi, the remaining factors in rho_r, interacting
/// through the Hermitian v0 = V(0).
struct InitialCondition {
    std::vector<cxd> psi;
    CMatrix rho_r;
    QOperator v0;
};

/// Throws UsageError / ValidationError when the pieces do not compose.
void validate_initial_condition(const InitialCondition& ic);

/// Composite |psi⟩⟨psi| ⊗ rho_r on v0's layout.
QOperator initial_composite_state(const InitialCondition& ic);

/// s = 1 - tr rho^2 (rho Hermitian).
double linear_entropy(const CMatrix& rho);
double linear_entropy(const QOperator& rho);

/// s2(0) = -2 (tr rho_a'^2 + tr(rho_a rho_a'')) with
/// rho_a'  = -i tr_R [V0, rho(0)],
/// rho_a'' = -tr_R [V0, [V0, rho(0)]]   (V-dot drops for pure psi).
/// Clamped to 0 inside [-1e-10, 0); more negative values raise
/// InternalConsistencyError.
double s2_direct(const InitialCondition& ic);

/// Literal operator-correlation form:
/// 4 ⟨ ⟨V[V,P]⟩_R - ⟨V⟩_R ⟨[V,P]⟩_R ⟩_a,  P = |psi⟩⟨psi| on factor a,
/// ⟨M⟩_R = tr_R((I ⊗ rho_r)·M), ⟨·⟩_a = ⟨psi|·|psi⟩.
/// Must agree with s2_direct; s2_direct is the arbiter.
double s2_eq3(const InitialCondition& ic);

struct TdResult {
    double s2 = 0.0;
    double td = std::numeric_limits<double>::infinity();
    bool unbounded = false; // s2 at or below the floor
    bool commuting = false; // same condition, reported per the t_d rule
};

/// td = 1/sqrt(s2) above the floor, UNBOUNDED otherwise. Negative s2 beyond
/// noise raises InternalConsistencyError.
TdResult td_from_s2(double s2, double s2_floor = 1e-12);

struct FdEstimate {
    double value = 0.0;
    double error_indicator = 0.0; // |D(h) - D(2h)| between the two levels
};

/// n-th derivative of the series at t = 0 (n in 1..4), one-sided
/// second-order stencils at steps h and 2h combined by Richardson
/// extrapolation. Needs at least 2n+3 samples. When the indicator exceeds
/// `tolerance`, throws PrecisionError advising a finer grid.
FdEstimate fd_derivative(const EntropySeries& series, int order,
                         double tolerance = std::numeric_limits<double>::infinity());
FdEstimate fd_derivative(const std::vector<double>& times, const std::vector<double>& values,
                         int order,
                         double tolerance = std::numeric_limits<double>::infinity());

} // namespace decoq
