// errors.hpp — exception taxonomy shared by the library and the CLI
#pragma once

#include <stdexcept>
#include <string>

namespace decoq {

// Caller misuse: bad arguments, layout mismatches, invalid specs.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Composite dimension above the configured cap (see dim_cap()).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Truncated state lost too much trace; carries the advised level count.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& msg, int advised)
        : std::runtime_error(msg), advised_levels(advised) {}
    int advised_levels;
};

// Numerical contract violated (e.g. non-Hermitian generator).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Finite-difference error indicator above the requested tolerance.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Config file or schema problem; message carries the field path.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A result violates an internal identity (e.g. negative curvature beyond noise).
class InternalConsistencyError : public std::runtime_error {
public:
    explicit InternalConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace decoq
