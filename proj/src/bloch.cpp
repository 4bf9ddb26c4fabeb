#include "qcwitness/bloch.hpp"

#include <cmath>

#include "qcwitness/errors.hpp"
#include "qcwitness/kernels.hpp"
#include "qcwitness/linalg.hpp"

namespace qcw {

BlochDecomposition decompose_operator(const CMatrix &op, const GeneratorBasis &basis, Exec exec) {
    const TraceTable traces = kernels::generator_traces(op, basis, exec);
    const int n = basis.dim;
    const int m = static_cast<int>(basis.size());
    const double local = n / 2.0;
    const double joint = n * n / 4.0;

    BlochDecomposition dec{n, RVector(m), RVector(m), RMatrix(m, m)};
    for (int i = 0; i < m; ++i) {
        dec.r(i) = local * real_checked(traces.left(i), "decompose r");
        dec.s(i) = local * real_checked(traces.right(i), "decompose s");
        for (int j = 0; j < m; ++j) {
            dec.t(i, j) = joint * real_checked(traces.joint(i, j), "decompose t");
        }
    }
    return dec;
}

BlochDecomposition decompose(const DensityMatrix &rho, const GeneratorBasis &basis, Exec exec) {
    if (rho.kind() != StateKind::bipartite || rho.local_dim() != basis.dim) {
        throw DimensionError("decompose: state local dimension " + std::to_string(rho.local_dim()) +
                             " does not match basis dimension " + std::to_string(basis.dim));
    }
    return decompose_operator(rho.matrix(), basis, exec);
}

CMatrix reconstruct(const BlochDecomposition &dec, const GeneratorBasis &basis) {
    const int n = basis.dim;
    const auto m = static_cast<Eigen::Index>(basis.size());
    if (dec.local_dim != n || dec.r.size() != m || dec.s.size() != m || dec.t.rows() != m ||
        dec.t.cols() != m) {
        throw DimensionError("reconstruct: coefficients do not match basis dimension " +
                             std::to_string(n));
    }
    const CMatrix id = CMatrix::Identity(n, n);
    CMatrix a_part = CMatrix::Zero(n, n);
    CMatrix b_part = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < m; ++i) {
        a_part += dec.r(i) * basis[i];
        b_part += dec.s(i) * basis[i];
    }
    CMatrix out = kron(id, id) + kron(a_part, id) + kron(id, b_part);
    for (Eigen::Index i = 0; i < m; ++i) {
        // sum_j t_ij g_i (x) g_j = g_i (x) (sum_j t_ij g_j)
        CMatrix row = CMatrix::Zero(n, n);
        for (Eigen::Index j = 0; j < m; ++j) {
            row += dec.t(i, j) * basis[j];
        }
        out += kron(basis[i], row);
    }
    return out / static_cast<double>(n * n);
}

CMatrix single_bloch(const RVector &u, const GeneratorBasis &basis) {
    const int n = basis.dim;
    if (u.size() != static_cast<Eigen::Index>(basis.size())) {
        throw DimensionError("single_bloch: vector length " + std::to_string(u.size()) +
                             " != " + std::to_string(basis.size()));
    }
    CMatrix sum = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        sum += u(i) * basis[i];
    }
    const double scale = std::sqrt(n * (n - 1) / 2.0);
    return (CMatrix::Identity(n, n) + scale * sum) / static_cast<double>(n);
}

RVector coherence_vector(const CMatrix &rho, const GeneratorBasis &basis) {
    const int n = basis.dim;
    if (rho.rows() != n || rho.cols() != n) {
        throw DimensionError("coherence_vector: operator does not match basis dimension");
    }
    RVector r(static_cast<Eigen::Index>(basis.size()));
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        r(i) = n / 2.0 * real_checked(trace_of_product(rho, basis[i]), "coherence_vector");
    }
    return r;
}

DensityMatrix partial_trace(const DensityMatrix &rho, Subsystem keep) {
    if (rho.kind() != StateKind::bipartite) {
        throw DimensionError("partial_trace needs a bipartite state");
    }
    CMatrix reduced = kernels::reduce(rho.matrix(), rho.local_dim(), keep == Subsystem::A);
    return DensityMatrix::single(std::move(reduced));
}

} // namespace qcw
