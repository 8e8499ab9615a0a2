#pragma once

#include <stdexcept>
#include <string>

namespace isovec {

/// A bracket of basis elements is not a linear combination of the basis;
/// signals an implementation bug, never expected on the shipped cases.
struct NotClosedError : std::runtime_error {
    explicit NotClosedError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A structure relation (sl2 / Heisenberg / center) failed to hold exactly.
struct StructureMismatchError : std::runtime_error {
    explicit StructureMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation requested outside a solution's domain, or a transform shrank
/// the domain below the requested window.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace isovec
