// evolution.hpp — exact composite-state propagation producing s(t) series,
// and t_d estimation from sampled curves.
#pragma once

#include <string>

#include "decoq/eigh.hpp"
#include "decoq/qoperator.hpp"
#include "decoq/series.hpp"

namespace decoq {

/// One-time eigendecomposition of a time-independent Hermitian generator,
/// reused across sample times.
class Propagator {
public:
    explicit Propagator(const QOperator& h);

    /// rho(t) = U(t) rho0 U(t)†.
    QOperator evolve(const QOperator& rho0, double t) const;

    /// Split form for sampling many times from one initial state:
    /// project rho0 into the eigenbasis once, then rotate per sample.
    CMatrix to_eigenbasis(const QOperator& rho0) const;
    QOperator evolve_projected(const CMatrix& w, double t) const;

    CMatrix unitary(double t) const;
    const EighResult& eigensystem() const { return es_; }
    const SpaceLayout& layout() const { return layout_; }

private:
    SpaceLayout layout_;
    EighResult es_;
};

struct RunOptions {
    double t_max = 2.0;
    int steps = 400; // grid intervals; steps+1 samples including t=0
};

/// Samples s(t) = 1 - tr rho_a(t)^2 on the uniform grid, rho_a the reduced
/// state of the first layout factor. Monitors composite-purity drift and the
/// population of the top two levels of every truncated factor (dim >= 4);
/// the run is flagged when the latter exceeds 1e-6.
EntropySeries run_entropy_series(const QOperator& h, const QOperator& rho0,
                                 const RunOptions& opts, SeriesMeta meta = {});

struct TdEstimate {
    double time = 0.0;
    bool reached = false;
    std::string warning; // non-monotone pre-crossing noise above eps_s/10
};

/// First crossing of s(t) = eps_s by linear interpolation; eps_s in (0, 0.5].
TdEstimate estimate_td(const EntropySeries& series, double eps_s = 0.05);

} // namespace decoq
