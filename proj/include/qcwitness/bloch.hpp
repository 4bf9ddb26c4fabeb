#pragma once

#include "qcwitness/density.hpp"
#include "qcwitness/su_basis.hpp"
#include "qcwitness/types.hpp"

namespace qcw {

/// Bipartite Bloch coefficients on C^n (x) C^n:
///   rho = (1/n^2) (I(x)I + sum r_i g_i(x)I + sum s_j I(x)g_j + sum t_ij g_i(x)g_j)
struct BlochDecomposition {
    int local_dim = 0;
    RVector r; ///< coherence vector of subsystem A
    RVector s; ///< coherence vector of subsystem B
    RMatrix t; ///< correlation matrix
};

/// r_i = (n/2) Tr(rho g_i(x)I), s_j = (n/2) Tr(rho I(x)g_j),
/// t_ij = (n^2/4) Tr(rho g_i(x)g_j). These factors make `reconstruct` exact
/// under Tr(g_i g_j) = 2 delta_ij. Throws NumericalError on an imaginary
/// trace residue >= 1e-12 and DimensionError on a basis mismatch.
BlochDecomposition decompose(const DensityMatrix &rho, const GeneratorBasis &basis,
                             Exec exec = Exec::parallel);

/// Same extraction on a raw operator; no state validation.
BlochDecomposition decompose_operator(const CMatrix &op, const GeneratorBasis &basis,
                                      Exec exec = Exec::parallel);

/// Hermitian, unit trace by construction. Not necessarily positive: run
/// validate_state on operators built from synthesized coefficients.
CMatrix reconstruct(const BlochDecomposition &dec, const GeneratorBasis &basis);

/// (1/N) (I + sqrt(N (N-1) / 2) sum u_i g_i) with N = basis.dim. Any u is
/// accepted; whether the result is a state is for validate_state to say.
CMatrix single_bloch(const RVector &u, const GeneratorBasis &basis);

/// Single-system coherence vector r_i = (n/2) Tr(rho g_i).
RVector coherence_vector(const CMatrix &rho, const GeneratorBasis &basis);

enum class Subsystem { A, B };

/// Reduced state of the kept subsystem.
DensityMatrix partial_trace(const DensityMatrix &rho, Subsystem keep);

} // namespace qcw
