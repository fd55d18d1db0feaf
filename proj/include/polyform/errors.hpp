#ifndef POLYFORM_ERRORS_HPP
#define POLYFORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polyform {

// Invalid mathematical input: wrong domain, division by zero, bad modulus.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exponent or size limit exceeded.
struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

// Rational reconstruction found no fraction below the sqrt bound.
// Callers retry with a larger modulus.
struct ReconstructionError : std::runtime_error {
    explicit ReconstructionError(const std::string& msg) : std::runtime_error(msg) {}
};

// A bounded resource ran out (prime list, retry caps).
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Out-of-range factor or argument index.
struct IndexError : std::runtime_error {
    explicit IndexError(const std::string& msg) : std::runtime_error(msg) {}
};

// Script-level problem with statement location attached by the interpreter.
struct ScriptError : std::runtime_error {
    explicit ScriptError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace polyform

#endif
