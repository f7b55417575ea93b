// models.hpp — builders and closed-form decoherence scales for the three
// worked models: pure dephasing, thermally driven cavity, dispersive
// spin-boson (with its Lie-rotation effective Hamiltonian).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "decoq/entropy.hpp"
#include "decoq/qoperator.hpp"
#include "decoq/states.hpp"

namespace decoq {

struct PureDephasingSpec {
    double g = 1.0; // coupling, frequency units
    QubitStateSpec qubit;
    BosonStateSpec boson;
};

struct CavityThermalSpec {
    struct Mode {
        double g = 0.0;
        double nbar = 0.0;
        int truncation = 0;
    };
    std::vector<Mode> modes;
    // Initial cavity state: a pure BosonStateSpec kind, or explicit amplitudes.
    std::optional<BosonStateSpec> cavity_state;
    std::vector<cxd> cavity_amplitudes;
    int cavity_truncation = 0; // required with explicit amplitudes
};

struct SpinBosonSpec {
    struct Mode {
        double g = 0.0;
        double omega = 0.0;          // lab frequency of the mode, > 0
        std::optional<double> nbar;  // explicit occupation; else from temperature
        int truncation = 0;
    };
    double delta = 0.0;   // Δ = Δ_G - ω_f
    double delta_G = 1.0; // two-level splitting parameter
    double omega_rabi = 0.0;
    std::vector<Mode> modes;
    std::optional<double> temperature; // kT in frequency units; Bose occupations
    QubitStateSpec qubit;
};

/// Common output of the model builders.
struct BuiltModel {
    QOperator h;    // generator used for exact series runs
    QOperator v0;   // interaction at t = 0
    QOperator rho0; // composite initial state
    InitialCondition ic;
    std::vector<int> truncations;
    double leakage = 0.0; // worst construction leakage
    std::vector<std::string> warnings;
};

BuiltModel build_pure_dephasing(const PureDephasingSpec& spec);
/// Closed form t_d = 1/(2 g rms(b+b†) sqrt(1-⟨σ_z⟩²)); rms taken from the
/// constructed (truncated) boson state.
TdResult td_pure_dephasing(const PureDephasingSpec& spec);

BuiltModel build_cavity_thermal(const CavityThermalSpec& spec);
/// t_d = 1/(2 sqrt((γ+2γ_T)(⟨a†a⟩-⟨a†⟩⟨a⟩) + γ_T)), γ = Σ g_j²,
/// γ_T = Σ g_j² n̄_j; cavity moments from the constructed state.
TdResult td_cavity(const CavityThermalSpec& spec);

/// Occupation per mode: explicit n̄ wins, else Bose at the spec temperature.
double resolved_nbar(const SpinBosonSpec& spec, const SpinBosonSpec::Mode& mode);

struct SpinBosonBuild {
    QOperator h_eff;    // effective Hamiltonian, printed second-order form
    QOperator h0;       // free part separated off for the interaction picture
    QOperator v0;       // Ω(σ+ + σ-) + B(0) σ_z
    CMatrix b0;         // B(0) on the bath layout, centered so ⟨B(0)⟩_R = 0
    QOperator h_series; // h0 + v0, generator for exact series runs
    QOperator rho0;
    InitialCondition ic;
    std::vector<int> truncations;
    double leakage = 0.0;
    std::vector<std::string> warnings;
};

SpinBosonBuild build_spin_boson_eff(const SpinBosonSpec& spec);

/// The untransformed Hamiltonian with the b σ+ + b† σ- couplings.
QOperator build_spin_boson_full(const SpinBosonSpec& spec);

/// Operator norm of U H U† - H_eff on the truncated space, U the Lie
/// rotation that cancels the coupling at first order. Scales as the square
/// of the couplings. At most 3 modes.
double lie_transform_residual(const SpinBosonSpec& spec);

/// ⟨B̂²⟩_R = (4Ω²/Δ_G²) Σ g_k²(2n̄_k+1) + Σ_{k,k'} (g_k²g_k'²/Δ_G²)(n̄_k'+1) n̄_k.
double b2_expectation(const SpinBosonSpec& spec);

TdResult td_spin_boson(const SpinBosonSpec& spec);

enum class FieldRegime { strong, weak };
/// High-temperature limits, γ = Σ g_k²/ω_k and n̄_k = kT/ω_k:
/// strong: Δ_G/(4Ω sqrt(2 kT γ (1-⟨σ_z⟩²)));
/// weak:   Δ_G/(2 kT γ sqrt(1-⟨σ_z⟩²)).
/// Requires the spec temperature.
TdResult td_spin_boson_limit(const SpinBosonSpec& spec, FieldRegime regime);

/// ε_k under both denominators (ω_k - ω_f and Δ_G); one warning line per
/// mode whose ε exceeds 0.1.
std::vector<std::string> spin_boson_validity_warnings(const SpinBosonSpec& spec);

/// γ = Σ g_k²/ω_k used by the limit formulas.
double spin_boson_gamma(const SpinBosonSpec& spec);

} // namespace decoq
