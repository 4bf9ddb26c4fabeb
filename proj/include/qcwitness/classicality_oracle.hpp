#pragma once

#include "qcwitness/density.hpp"
#include "qcwitness/types.hpp"

namespace qcw {

struct OracleOptions {
    double tol = 1e-10;
    int restarts = 20;
    Seed seed = 7;
    int max_sweeps = 2000;
    Exec exec = Exec::parallel;
};

struct OracleResult {
    bool classical = false;
    double residual = 0.0; ///< best off-diagonal mass over all restarts
    int best_restart = -1;
};

/// Sum of |M_pq|^2 over p != q, M = (U_A (x) U_B)^dagger rho (U_A (x) U_B).
double off_diagonal_mass(const CMatrix &rho, const CMatrix &ua, const CMatrix &ub);

/// Brute-force membership test for sum_ij p_ij |a_i><a_i| (x) |b_j><b_j|:
/// minimizes off_diagonal_mass over local unitaries from Haar-random starts,
/// coordinate descent on U <- U exp(i theta g_k) per generator and side.
/// Restart r draws from stream derive_seed(seed, r); restarts run
/// concurrently under Exec::parallel with identical results.
///
/// `classical` requires residual < tol. A false answer may be a search
/// failure; the residual says how close the search got. Practical for
/// local dimension 2 and 3.
OracleResult is_classical(const DensityMatrix &rho, const OracleOptions &options = {});

} // namespace qcw
