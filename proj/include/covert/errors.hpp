#ifndef COVERT_ERRORS_HPP
#define COVERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace covert {

// Bad flag/parameter values (out-of-range m, p >= q, ...).
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Caller broke an operation contract (length mismatch, non-integral count, ...).
struct ContractError : std::invalid_argument {
    explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Instance is mathematically valid but too large/small for this implementation.
struct ScaleError : std::runtime_error {
    explicit ScaleError(const std::string& what) : std::runtime_error(what) {}
};

// No code with the requested parameters exists (L > |F|, empty k1 feasible set, ...).
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace covert

#endif
