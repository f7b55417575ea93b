// states.hpp — spin-1/2 and single-mode bosonic states and operators
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "decoq/matrix.hpp"

namespace decoq {

// Qubit basis order, fixed project-wide: index 0 = |1⟩ (upper level),
// index 1 = |0⟩ (lower level), so sigma_z = diag(+1, -1) = |1⟩⟨1| - |0⟩⟨0|.

/// Bloch angles; convention ⟨sigma_z⟩ = cos(theta), theta=0 ↦ |1⟩,
/// theta=pi ↦ |0⟩, equator theta=pi/2.
struct QubitStateSpec {
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // [0, 2*pi)
};

struct PauliOps {
    CMatrix sz, sp, sm, sx; // sp = |1⟩⟨0|
};
PauliOps pauli_ops();

/// cos(theta/2)|1⟩ + e^{i phi} sin(theta/2)|0⟩; throws UsageError on
/// out-of-range angles.
std::vector<cxd> make_qubit(const QubitStateSpec& spec);

enum class BosonKind { fock, thermal, coherent, squeezed_vacuum };

std::string to_string(BosonKind k);

struct BosonStateSpec {
    BosonKind kind = BosonKind::fock;
    int fock_n = 0;          // fock
    double nbar = 0.0;       // thermal, >= 0
    cxd alpha{0.0, 0.0};     // coherent
    double r = 0.0;          // squeezed_vacuum; r > 0 reduces Var(b+b†)
    int truncation = 0;      // Fock levels 0..N-1
    double leak_tol = 1e-6;  // construction fails loudly above this
};

struct LadderOps {
    CMatrix b, bdag, x; // x = b + b†
};
LadderOps ladder_ops(int n_levels);

/// A constructed single-mode state on the truncated space.
struct BosonState {
    CMatrix rho;                 // N×N density matrix, renormalized
    std::vector<cxd> amplitudes; // normalized vector for the pure kinds, empty for thermal
    bool pure = false;
    double leakage = 0.0;        // 1 - trace before renormalization
    double renorm_factor = 1.0;  // applied to restore unit trace
};

/// Builds the state; throws TruncationError (with the advised level count)
/// when leakage exceeds spec.leak_tol.
BosonState make_boson(const BosonStateSpec& spec);

struct QuadratureStats {
    double mean;     // ⟨b + b†⟩
    double variance; // ⟨(Δ(b + b†))²⟩
};
QuadratureStats quadrature_stats(const CMatrix& rho_b);

/// ⟨b†b⟩ of a single-mode state.
double mean_boson_number(const CMatrix& rho_b);

} // namespace decoq
