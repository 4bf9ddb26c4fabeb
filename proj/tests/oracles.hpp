#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical paths, so agreement with them is an independent check.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qcw::test {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;

/// Direct O(m^2) sum over unordered pairs of |e_i e_j|.
inline double pairwise_witness(const std::vector<double> &e) {
    double w = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            w += std::abs(e[i] * e[j]);
        }
    }
    return w;
}

inline M pauli_x() {
    M m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline M pauli_y() {
    M m(2, 2);
    m << 0, C(0, -1), C(0, 1), 0;
    return m;
}
inline M pauli_z() {
    M m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

/// The eight textbook Gell-Mann matrices lambda_1 .. lambda_8.
inline std::vector<M> textbook_gell_mann() {
    const C i(0, 1);
    std::vector<M> out(8, M::Zero(3, 3));
    out[0](0, 1) = out[0](1, 0) = 1;
    out[1](0, 1) = -i;
    out[1](1, 0) = i;
    out[2](0, 0) = 1;
    out[2](1, 1) = -1;
    out[3](0, 2) = out[3](2, 0) = 1;
    out[4](0, 2) = -i;
    out[4](2, 0) = i;
    out[5](1, 2) = out[5](2, 1) = 1;
    out[6](1, 2) = -i;
    out[6](2, 1) = i;
    const double r3 = 1.0 / std::sqrt(3.0);
    out[7](0, 0) = out[7](1, 1) = r3;
    out[7](2, 2) = -2 * r3;
    return out;
}

/// Explicit Kronecker product by index arithmetic.
inline M kron_naive(const M &a, const M &b) {
    M out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

/// Tr(O rho) via the full matrix product.
inline C expectation(const M &rho, const M &op) { return (op * rho).trace(); }

inline M ket_bra(const Eigen::VectorXcd &v) { return v * v.adjoint(); }

inline bool matrices_close(const M &a, const M &b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).cwiseAbs().maxCoeff() < tol;
}

} // namespace qcw::test
