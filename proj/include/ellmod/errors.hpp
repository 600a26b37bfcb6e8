#pragma once

#include <stdexcept>
#include <string>

namespace ellmod {

// Rejected input (bad token, invalid determinant, empty support, ...) is
// reported with std::invalid_argument; exact-arithmetic overflow with
// std::overflow_error; poles and excluded points with std::domain_error.

/// A numerical procedure could not certify its result (iteration cap hit,
/// quadrature did not converge, enumeration cutoff too small).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ellmod
