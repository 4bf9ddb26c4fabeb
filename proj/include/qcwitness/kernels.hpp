#pragma once

#include "qcwitness/su_basis.hpp"
#include "qcwitness/types.hpp"

namespace qcw {

/// Generator expectation traces of a bipartite operator rho on C^n (x) C^n:
///   joint(i, j) = Tr(rho (g_i (x) g_j))
///   left(i)     = Tr(rho (g_i (x) I))
///   right(j)    = Tr(rho (I (x) g_j))
struct TraceTable {
    CMatrix joint;
    CVector left;
    CVector right;
};

namespace kernels {

/// Contracts rho index-wise against one generator at a time, O(n^6) total.
/// The outer loop over left generators is OpenMP-parallel when exec is parallel.
TraceTable generator_traces(const CMatrix &rho, const GeneratorBasis &basis,
                            Exec exec = Exec::parallel);

/// Reduced operator on one factor of C^n (x) C^n; keep_first selects which.
CMatrix reduce(const CMatrix &rho, int n, bool keep_first);

} // namespace kernels

namespace reference {

/// Serial kernel that forms every g_i (x) g_j explicitly, O(n^8). Kept for
/// testing and benchmarking against kernels::generator_traces.
TraceTable generator_traces(const CMatrix &rho, const GeneratorBasis &basis);

/// Partial trace via explicit Tr(rho (E_ab (x) I)) style sums over a
/// product basis.
CMatrix reduce(const CMatrix &rho, int n, bool keep_first);

} // namespace reference

} // namespace qcw
