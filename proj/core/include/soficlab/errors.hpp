#ifndef SOFICLAB_ERRORS_HPP
#define SOFICLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace soficlab {

// Base class for all library errors. CLI maps these to exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid input: bad indices, size mismatches, violated preconditions.
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// A rewriting run exceeded the normalization budget of its MonoidSpec.
struct BudgetExhaustedError : Error {
    explicit BudgetExhaustedError(const std::string& what) : Error(what) {}
};

// Exact integer arithmetic left the representable range.
struct OverflowError : Error {
    explicit OverflowError(const std::string& what) : Error(what) {}
};

// Pattern radius too large for exact enumeration.
struct RadiusTooLargeError : Error {
    explicit RadiusTooLargeError(const std::string& what) : Error(what) {}
};

}  // namespace soficlab

#endif
