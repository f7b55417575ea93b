// evolution.cpp
#include "decoq/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "decoq/entropy.hpp"
#include "decoq/errors.hpp"
#include "decoq/kernels.hpp"

namespace decoq {

Propagator::Propagator(const QOperator& h) : layout_(h.layout()) {
    if (!h.is_hermitian(1e-12))
        throw ValidationError("Propagator: generator is not Hermitian");
    es_ = eigh(h.matrix());
}

QOperator Propagator::evolve(const QOperator& rho0, double t) const {
    return evolve_projected(to_eigenbasis(rho0), t);
}

CMatrix Propagator::to_eigenbasis(const QOperator& rho0) const {
    if (rho0.layout() != layout_) throw UsageError("Propagator: layout mismatch");
    return es_.vectors.adjoint() * rho0.matrix() * es_.vectors;
}

QOperator Propagator::evolve_projected(const CMatrix& w, double t) const {
    const int n = static_cast<int>(layout_.total());
    if (w.rows() != n || w.cols() != n) throw UsageError("Propagator: projected-state size mismatch");
    std::vector<cxd> ph(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double a = -es_.eigenvalues[static_cast<std::size_t>(i)] * t;
        ph[static_cast<std::size_t>(i)] = {std::cos(a), std::sin(a)};
    }
    CMatrix m(n, n);
    kern::active().phase_scale(m.data(), w.data(), ph.data(), n);
    return QOperator(layout_, es_.vectors * m * es_.vectors.adjoint());
}

CMatrix Propagator::unitary(double t) const {
    const int n = static_cast<int>(layout_.total());
    CMatrix ph(n, n);
    for (int i = 0; i < n; ++i)
        ph(i, i) = std::exp(cxd{0.0, -es_.eigenvalues[static_cast<std::size_t>(i)] * t});
    return es_.vectors * ph * es_.vectors.adjoint();
}

namespace {

// Per truncated factor, marks composite basis states whose factor digit sits
// on the top two levels.
std::vector<std::vector<bool>> edge_masks(const SpaceLayout& l) {
    std::vector<std::vector<bool>> masks;
    const long total = l.total();
    for (int f = 0; f < l.factors(); ++f) {
        const int d = l.dim(f);
        if (d < 4) continue;
        long block = 1; // stride of factor f
        for (int g = f + 1; g < l.factors(); ++g) block *= l.dim(g);
        std::vector<bool> mask(static_cast<std::size_t>(total), false);
        for (long idx = 0; idx < total; ++idx) {
            const int digit = static_cast<int>((idx / block) % d);
            if (digit >= d - 2) mask[static_cast<std::size_t>(idx)] = true;
        }
        masks.push_back(std::move(mask));
    }
    return masks;
}

} // namespace

EntropySeries run_entropy_series(const QOperator& h, const QOperator& rho0,
                                 const RunOptions& opts, SeriesMeta meta) {
    if (h.layout() != rho0.layout())
        throw UsageError("run_entropy_series: layout mismatch");
    if (opts.steps < 16) throw UsageError("run_entropy_series: needs steps >= 16");
    if (!(opts.t_max > 0.0)) throw UsageError("run_entropy_series: t_max must be > 0");

    const Propagator prop(h); // validates hermiticity
    const SpaceLayout& l = h.layout();
    const double purity0 = sum_abs2(rho0.matrix());
    const auto masks = edge_masks(l);
    const double dt = opts.t_max / opts.steps;
    const CMatrix w = prop.to_eigenbasis(rho0);

    EntropySeries out;
    out.times.reserve(static_cast<std::size_t>(opts.steps) + 1);
    out.values.reserve(static_cast<std::size_t>(opts.steps) + 1);
    meta.grid_step = dt;
    meta.max_purity_drift = 0.0;
    meta.max_edge_population = 0.0;

    for (int i = 0; i <= opts.steps; ++i) {
        const double t = dt * i;
        QOperator rho_t = prop.evolve_projected(w, t);
        meta.max_purity_drift =
            std::max(meta.max_purity_drift, std::abs(sum_abs2(rho_t.matrix()) - purity0));
        for (const auto& mask : masks) {
            double pop = 0.0;
            for (long idx = 0; idx < l.total(); ++idx)
                if (mask[static_cast<std::size_t>(idx)])
                    pop += rho_t.matrix()(static_cast<int>(idx), static_cast<int>(idx)).real();
            meta.max_edge_population = std::max(meta.max_edge_population, pop);
        }
        QOperator rho_a = partial_trace(rho_t, {0});
        const double s = std::clamp(linear_entropy(rho_a), 0.0, 1.0);
        out.times.push_back(t);
        out.values.push_back(s);
    }
    meta.edge_flagged = meta.max_edge_population > 1e-6;
    out.meta = std::move(meta);
    return out;
}

TdEstimate estimate_td(const EntropySeries& series, double eps_s) {
    if (!(eps_s > 0.0 && eps_s <= 0.5))
        throw UsageError("estimate_td: eps_s must lie in (0, 0.5]");
    if (series.times.size() < 2) throw UsageError("estimate_td: series too short");

    TdEstimate est;
    std::size_t cross = series.values.size();
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (series.values[i] >= eps_s) {
            cross = i;
            break;
        }
    }
    if (cross == series.values.size()) return est; // NOT_REACHED

    // non-monotone noise before the crossing: largest forward dip
    double run_max = series.values[0], dip = 0.0;
    for (std::size_t i = 1; i <= cross; ++i) {
        dip = std::max(dip, run_max - series.values[i]);
        run_max = std::max(run_max, series.values[i]);
    }
    if (dip > eps_s / 10.0)
        est.warning = "pre-crossing entropy is non-monotone beyond eps_s/10";

    est.reached = true;
    if (cross == 0) {
        est.time = series.times[0];
        return est;
    }
    const double s0 = series.values[cross - 1], s1 = series.values[cross];
    const double t0 = series.times[cross - 1], t1 = series.times[cross];
    est.time = t0 + (eps_s - s0) * (t1 - t0) / (s1 - s0);
    return est;
}

} // namespace decoq
