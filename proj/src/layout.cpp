// layout.cpp
#include "decoq/layout.hpp"

#include <cstdlib>
#include <sstream>

#include "decoq/errors.hpp"

namespace decoq {

long dim_cap() {
    const char* env = std::getenv("DECOQ_DIM_CAP");
    if (env != nullptr) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 4096;
}

SpaceLayout::SpaceLayout(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw UsageError("SpaceLayout: needs at least one factor");
    total_ = 1;
    const long cap = dim_cap();
    for (int d : dims_) {
        if (d < 1) throw UsageError("SpaceLayout: every dimension must be >= 1");
        total_ *= d;
        if (total_ > cap) {
            std::ostringstream os;
            os << "SpaceLayout: composite dimension exceeds cap " << cap
               << " (set DECOQ_DIM_CAP to raise it)";
            throw CapacityError(os.str());
        }
    }
}

SpaceLayout SpaceLayout::concat(const SpaceLayout& other) const {
    std::vector<int> d = dims_;
    d.insert(d.end(), other.dims_.begin(), other.dims_.end());
    return SpaceLayout(std::move(d));
}

std::string SpaceLayout::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (i > 0) os << 'x';
        os << dims_[i];
    }
    return os.str();
}

} // namespace decoq
