#pragma once

#include <cmath>
#include <string>

#include "qcwitness/errors.hpp"
#include "qcwitness/types.hpp"

namespace qcw {

/// Imaginary residue allowed on traces that are real in exact arithmetic.
inline constexpr double kImagResidueTol = 1e-12;

CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Tr(A B) without forming the product.
inline Complex trace_of_product(const CMatrix &a, const CMatrix &b) {
    return a.transpose().cwiseProduct(b).sum();
}

/// Returns the real part of x; throws NumericalError if |Im x| >= kImagResidueTol.
inline double real_checked(Complex x, const char *what) {
    if (!(std::abs(x.imag()) < kImagResidueTol)) {
        throw NumericalError(std::string(what) + ": imaginary residue " + std::to_string(x.imag()));
    }
    return x.real();
}

} // namespace qcw
