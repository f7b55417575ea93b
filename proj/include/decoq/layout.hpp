// layout.hpp — ordered subsystem dimensions of a tensor-product space
#pragma once

#include <string>
#include <vector>

namespace decoq {

/// Composite-dimension cap for dense operations. Defaults to 4096; the
/// DECOQ_DIM_CAP environment variable overrides it.
long dim_cap();

/// Ordered list of subsystem dimensions, leftmost factor first.
///
/// Index convention (fixed project-wide): the composite basis index of the
/// multi-index (i0, i1, ..., ik) is ((i0*d1 + i1)*d2 + i2)*..., i.e. the
/// leftmost factor is the most significant digit. kron(A, B) follows the
/// same rule: row i*p+k, col j*q+l holds A(i,j)*B(k,l).
class SpaceLayout {
public:
    SpaceLayout() = default;
    explicit SpaceLayout(std::vector<int> dims);
    static SpaceLayout single(int dim) { return SpaceLayout({dim}); }

    const std::vector<int>& dims() const { return dims_; }
    int factors() const { return static_cast<int>(dims_.size()); }
    int dim(int k) const { return dims_.at(static_cast<std::size_t>(k)); }
    long total() const { return total_; }

    bool operator==(const SpaceLayout&) const = default;

    /// Layout of this ⊗ other; throws CapacityError above the cap.
    SpaceLayout concat(const SpaceLayout& other) const;

    std::string to_string() const; // e.g. "2x60"

private:
    std::vector<int> dims_;
    long total_ = 1;
};

} // namespace decoq
