#pragma once

#include <string>
#include <vector>

#include "qcwitness/types.hpp"

namespace qcw {

/// Generalized Gell-Mann generators of SU(n), normalized so that
/// Tr(g_i g_j) = 2 delta_ij.
///
/// Order: for every pair j < k (lexicographic) the symmetric generator
/// E_jk + E_kj; then, same pair order, the antisymmetric generator
/// -i E_jk + i E_kj; then the n-1 diagonal generators
/// sqrt(2 / (l (l+1))) (sum_{m<=l} E_mm - l E_{l+1,l+1}), l = 1..n-1.
/// For n = 2 this is exactly (sigma_x, sigma_y, sigma_z).
struct GeneratorBasis {
    int dim = 0;
    std::vector<CMatrix> generators;
    /// One tag per generator, e.g. "sym(1,2)", "asym(1,3)", "diag(2)" (1-based).
    std::vector<std::string> tags;
    std::string ordering_tag;

    std::size_t size() const noexcept { return generators.size(); }
    const CMatrix &operator[](std::size_t i) const { return generators[i]; }
};

/// Throws DimensionError("dimension too small") for n < 2.
GeneratorBasis build_generators(int n);

struct BasisViolation {
    enum class Kind { count, hermiticity, trace, orthogonality, normalization };
    Kind kind;
    int i = -1;
    int j = -1;
    double magnitude = 0.0;
};

struct BasisReport {
    bool ok = true;
    std::vector<BasisViolation> violations;
    /// Largest |Tr(g_i g_j) - 2 delta_ij| seen, whether or not it violated.
    double max_orthogonality_error = 0.0;
};

/// Checks count, Hermiticity, tracelessness and Tr(g_i g_j) = 2 delta_ij.
/// A quantity violates when its deviation exceeds tol.
BasisReport verify_basis(const GeneratorBasis &basis, double tol);

const char *to_string(BasisViolation::Kind kind);

} // namespace qcw
