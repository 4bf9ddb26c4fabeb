#include "qcwitness/kernels.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "qcwitness/errors.hpp"
#include "qcwitness/linalg.hpp"

namespace qcw {

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

namespace {

void check_shape(const CMatrix &rho, int n) {
    if (rho.rows() != n * n || rho.cols() != n * n) {
        throw DimensionError("operator is " + std::to_string(rho.rows()) + "x" +
                             std::to_string(rho.cols()) + ", basis expects " +
                             std::to_string(n * n) + "x" + std::to_string(n * n));
    }
}

} // namespace

namespace kernels {

TraceTable generator_traces(const CMatrix &rho, const GeneratorBasis &basis, Exec exec) {
    const int n = basis.dim;
    check_shape(rho, n);
    const int m = static_cast<int>(basis.size());

    TraceTable out{CMatrix(m, m), CVector(m), CVector(m)};
    const CMatrix rho_b = reduce(rho, n, false);
    for (int j = 0; j < m; ++j) {
        out.right(j) = trace_of_product(rho_b, basis[j]);
    }

    // X_i(b, d) = sum_{a,c} rho(a n + b, c n + d) g_i(c, a), so that
    // Tr(rho (g_i (x) B)) = Tr(X_i B).
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int i = 0; i < m; ++i) {
        const CMatrix &g = basis[i];
        CMatrix x = CMatrix::Zero(n, n);
        for (int a = 0; a < n; ++a) {
            for (int c = 0; c < n; ++c) {
                const Complex gca = g(c, a);
                if (gca == Complex{}) {
                    continue;
                }
                x.noalias() += gca * rho.block(a * n, c * n, n, n);
            }
        }
        out.left(i) = x.trace();
        for (int j = 0; j < m; ++j) {
            out.joint(i, j) = trace_of_product(x, basis[j]);
        }
    }
    return out;
}

CMatrix reduce(const CMatrix &rho, int n, bool keep_first) {
    check_shape(rho, n);
    CMatrix out = CMatrix::Zero(n, n);
    if (keep_first) {
        for (int a = 0; a < n; ++a) {
            for (int c = 0; c < n; ++c) {
                out(a, c) = rho.block(a * n, c * n, n, n).trace();
            }
        }
    } else {
        for (int a = 0; a < n; ++a) {
            out += rho.block(a * n, a * n, n, n);
        }
    }
    return out;
}

} // namespace kernels

namespace reference {

TraceTable generator_traces(const CMatrix &rho, const GeneratorBasis &basis) {
    const int n = basis.dim;
    check_shape(rho, n);
    const int m = static_cast<int>(basis.size());
    const CMatrix id = CMatrix::Identity(n, n);

    TraceTable out{CMatrix(m, m), CVector(m), CVector(m)};
    for (int i = 0; i < m; ++i) {
        out.left(i) = (rho * kron(basis[i], id)).trace();
        out.right(i) = (rho * kron(id, basis[i])).trace();
        for (int j = 0; j < m; ++j) {
            out.joint(i, j) = (rho * kron(basis[i], basis[j])).trace();
        }
    }
    return out;
}

CMatrix reduce(const CMatrix &rho, int n, bool keep_first) {
    check_shape(rho, n);
    const CMatrix id = CMatrix::Identity(n, n);
    CMatrix out(n, n);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            // <p|rho_kept|q> = Tr(rho (|q><p| (x) I)) or Tr(rho (I (x) |q><p|))
            CMatrix e = CMatrix::Zero(n, n);
            e(q, p) = 1.0;
            out(p, q) = (rho * (keep_first ? kron(e, id) : kron(id, e))).trace();
        }
    }
    return out;
}

} // namespace reference

} // namespace qcw
