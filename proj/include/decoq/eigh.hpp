// eigh.hpp — Hermitian eigendecomposition (Householder + implicit-shift QL)
#pragma once

#include <vector>

#include "decoq/matrix.hpp"

namespace decoq {

/// H = V · diag(eigenvalues) · V†, eigenvalues ascending, V unitary with
/// eigenvectors in columns.
struct EighResult {
    std::vector<double> eigenvalues;
    CMatrix vectors;
};

/// Dense Hermitian eigendecomposition.
///
/// The input must be Hermitian within `herm_tol` (relative to max|H|);
/// the strictly lower triangle and the Hermitian average of the diagonal
/// are used, so roundoff-level asymmetry is harmless. Throws
/// ValidationError on non-Hermitian input, InternalConsistencyError if the
/// QL iteration fails to converge (does not happen for finite Hermitian
/// input in practice).
EighResult eigh(const CMatrix& h, double herm_tol = 1e-12);

} // namespace decoq
