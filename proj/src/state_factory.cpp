#include "qcwitness/state_factory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qcwitness/errors.hpp"
#include "qcwitness/linalg.hpp"

namespace qcw {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kProbTol = 1e-12;

CMatrix hermitize(const CMatrix &m) { return 0.5 * (m + m.adjoint()); }

bool is_unitary(const CMatrix &u, int n) {
    if (u.rows() != n || u.cols() != n) {
        return false;
    }
    return (u.adjoint() * u - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < kUnitaryTol;
}

double min_eigenvalue(const CMatrix &h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

CMatrix ginibre(int n, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(n, n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = Complex{re, im};
        }
    }
    return g;
}

DensityMatrix admit_bipartite(CMatrix op, int n, const char *what) {
    auto report = validate_state(op, StateTolerance{});
    if (!report.positive_ok) {
        throw InadmissibleError(std::string(what) + ": operator is not positive semidefinite",
                                report.min_eigenvalue);
    }
    return DensityMatrix::bipartite(std::move(op), n);
}

void check_generator_index(const GeneratorBasis &basis, int i, int j) {
    const int m = static_cast<int>(basis.size());
    if (i < 0 || j < 0 || i >= m || j >= m) {
        throw DimensionError("generator index out of range [0, " + std::to_string(m) + ")");
    }
}

// Bisection for the largest t >= 0 with min eig(I + sign * t * op) >= 0.
double positivity_edge(const CMatrix &op, double sign) {
    const CMatrix id = CMatrix::Identity(op.rows(), op.cols());
    auto feasible = [&](double t) { return min_eigenvalue(id + sign * t * op) >= 0.0; };
    double lo = 0.0;
    double hi = 1.0;
    while (feasible(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) {
            return std::numeric_limits<double>::infinity();
        }
    }
    while (hi - lo > 1e-13 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

} // namespace

DensityMatrix classical_state(const ClassicalSpec &spec) {
    const int n = spec.local_dim;
    if (n < 1 || spec.probs.rows() != n || spec.probs.cols() != n) {
        throw DimensionError("classical_state: probs must be n x n");
    }
    if (spec.probs.minCoeff() < 0.0 || std::abs(spec.probs.sum() - 1.0) > kProbTol) {
        throw Error("classical_state: probabilities must be nonnegative and sum to 1");
    }
    if (!is_unitary(spec.basis_a, n) || !is_unitary(spec.basis_b, n)) {
        throw Error("classical_state: local bases must be unitary");
    }
    const CMatrix u = kron(spec.basis_a, spec.basis_b);
    CVector diag(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            diag(i * n + j) = spec.probs(i, j);
        }
    }
    CMatrix rho = u * diag.asDiagonal() * u.adjoint();
    return DensityMatrix::bipartite(hermitize(rho), n);
}

DensityMatrix product_state(const DensityMatrix &rho_a, const DensityMatrix &rho_b) {
    if (rho_a.kind() != StateKind::single || rho_b.kind() != StateKind::single ||
        rho_a.dim() != rho_b.dim()) {
        throw DimensionError("product_state: need two single-system states of equal dimension");
    }
    return DensityMatrix::bipartite(kron(rho_a.matrix(), rho_b.matrix()), rho_a.dim());
}

DensityMatrix max_entangled(int n) {
    if (n < 2) {
        throw DimensionError("dimension too small");
    }
    // |Phi><Phi| has entry 1/n at every (ii, jj).
    CMatrix rho = CMatrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            rho(i * n + i, j * n + j) = 1.0 / n;
        }
    }
    return DensityMatrix::bipartite(std::move(rho), n);
}

DensityMatrix maximally_mixed(int n) {
    if (n < 1) {
        throw DimensionError("dimension too small");
    }
    return DensityMatrix::bipartite(CMatrix::Identity(n * n, n * n) / static_cast<double>(n * n), n);
}

DensityMatrix random_density(int n_total, Rng &rng) {
    if (n_total < 1) {
        throw DimensionError("random_density: dimension must be positive");
    }
    const CMatrix g = ginibre(n_total, rng);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::single(hermitize(rho));
}

DensityMatrix random_bipartite_density(int n, Rng &rng) {
    DensityMatrix flat = random_density(n * n, rng);
    return DensityMatrix::bipartite(flat.matrix(), n);
}

CMatrix haar_unitary(int n, Rng &rng) {
    if (n < 1) {
        throw DimensionError("haar_unitary: dimension must be positive");
    }
    const CMatrix g = ginibre(n, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix &r = qr.matrixQR();
    for (int k = 0; k < n; ++k) {
        const Complex d = r(k, k);
        const double mag = std::abs(d);
        q.col(k) *= (mag > 0.0) ? d / mag : Complex{1.0, 0.0};
    }
    return q;
}

RMatrix random_probabilities(int n, Rng &rng) {
    std::exponential_distribution<double> expo(1.0);
    RMatrix p(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            p(i, j) = expo(rng);
        }
    }
    return p / p.sum();
}

DensityMatrix x_form_state(const GeneratorBasis &basis, int i, int j, double t) {
    check_generator_index(basis, i, j);
    const int n = basis.dim;
    CMatrix op = (CMatrix::Identity(n * n, n * n) + t * kron(basis[i], basis[j])) /
                 static_cast<double>(n * n);
    return admit_bipartite(std::move(op), n, "x_form_state");
}

double admissible_t_max(const GeneratorBasis &basis, int i, int j) {
    check_generator_index(basis, i, j);
    return positivity_edge(kron(basis[i], basis[j]), 1.0);
}

double admissible_t_max(int n, int i, int j) { return admissible_t_max(build_generators(n), i, j); }

double admissible_t_min(const GeneratorBasis &basis, int i, int j) {
    check_generator_index(basis, i, j);
    return -positivity_edge(kron(basis[i], basis[j]), -1.0);
}

DensityMatrix uncorrelated_form_state(const GeneratorBasis &basis, const RVector &r,
                                      const RVector &s) {
    const int n = basis.dim;
    const auto m = static_cast<Eigen::Index>(basis.size());
    if (r.size() != m || s.size() != m) {
        throw DimensionError("uncorrelated_form_state: coefficient length must be " +
                             std::to_string(m));
    }
    CMatrix a = CMatrix::Zero(n, n);
    CMatrix b = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < m; ++k) {
        a += r(k) * basis[k];
        b += s(k) * basis[k];
    }
    const CMatrix id = CMatrix::Identity(n, n);
    CMatrix op = (kron(id, id) + kron(a, id) + kron(id, b)) / static_cast<double>(n * n);
    return admit_bipartite(std::move(op), n, "uncorrelated_form_state");
}

} // namespace qcw
