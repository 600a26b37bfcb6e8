#pragma once

#include <cstdint>
#include <stdexcept>

namespace ellmod {

/// Numeric policy shared by the series, quadrature and enumeration code.
struct Precision {
    double eps = 1e-13;           // target accuracy of series and quadratures
    int max_terms = 64;           // cap on q-series / row-sum terms
    std::int64_t enum_bound = 4096; // cap on matrix entries during enumeration
    double tol = 1e-9;            // geometric matching (domain boundary, special points)

    void validate() const {
        if (!(eps >= 1e-14)) throw std::invalid_argument("precision: eps must be >= 1e-14");
        if (max_terms < 8) throw std::invalid_argument("precision: max_terms must be >= 8");
        if (enum_bound < 1) throw std::invalid_argument("precision: enum_bound must be >= 1");
        if (!(tol > 0)) throw std::invalid_argument("precision: tol must be > 0");
    }
};

} // namespace ellmod
