// series.hpp — sampled linear-entropy curve with provenance metadata
#pragma once

#include <string>
#include <vector>

namespace decoq {

struct SeriesMeta {
    std::string model_hash;
    std::vector<int> truncations;
    double leakage = 0.0;           // max construction leakage over factors
    double grid_step = 0.0;
    bool edge_flagged = false;      // top-two-Fock-level population crossed 1e-6
    double max_edge_population = 0.0;
    double max_purity_drift = 0.0;  // |tr rho(t)^2 - tr rho(0)^2| worst case
};

/// s(t) samples on a uniform grid starting at t = 0.
struct EntropySeries {
    std::vector<double> times;
    std::vector<double> values;
    SeriesMeta meta;
};

} // namespace decoq
