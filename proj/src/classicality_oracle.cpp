#include "qcwitness/classicality_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qcwitness/errors.hpp"
#include "qcwitness/linalg.hpp"
#include "qcwitness/random.hpp"
#include "qcwitness/state_factory.hpp"
#include "qcwitness/su_basis.hpp"

namespace qcw {

double off_diagonal_mass(const CMatrix &rho, const CMatrix &ua, const CMatrix &ub) {
    const CMatrix u = kron(ua, ub);
    const CMatrix m = u.adjoint() * rho * u;
    double mass = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r != c) {
                mass += std::norm(m(r, c));
            }
        }
    }
    return mass;
}

namespace {

constexpr double kInitialStep = 0.25;
constexpr double kMaxStep = 0.5;
constexpr double kMinStep = 1e-10;
constexpr double kImprovementTol = 1e-12;
constexpr int kHalvings = 12;

// exp(i theta g) from a precomputed eigendecomposition g = V diag(d) V^dagger.
struct Rotation {
    CMatrix vecs;
    RVector vals;

    CMatrix operator()(double theta) const {
        CVector phases(vals.size());
        for (Eigen::Index k = 0; k < vals.size(); ++k) {
            phases(k) = std::polar(1.0, theta * vals(k));
        }
        return vecs * phases.asDiagonal() * vecs.adjoint();
    }
};

struct Descent {
    double residual;
    int sweeps;
};

Descent descend(const CMatrix &rho, const std::vector<Rotation> &rotations, CMatrix ua, CMatrix ub,
                int max_sweeps) {
    const int m = static_cast<int>(rotations.size());
    std::vector<double> step(static_cast<std::size_t>(2 * m), kInitialStep);
    double f = off_diagonal_mass(rho, ua, ub);

    int sweep = 0;
    int quiet_sweeps = 0;
    for (; sweep < max_sweeps && f > 0.0; ++sweep) {
        const double f_start = f;
        for (int c = 0; c < 2 * m; ++c) {
            const bool side_a = c < m;
            const Rotation &rot = rotations[static_cast<std::size_t>(c % m)];
            CMatrix &target = side_a ? ua : ub;
            double &h = step[static_cast<std::size_t>(c)];

            auto eval = [&](double theta) {
                const CMatrix moved = target * rot(theta);
                return side_a ? off_diagonal_mass(rho, moved, ub) : off_diagonal_mass(rho, ua, moved);
            };

            const double f_plus = eval(h);
            const double f_minus = eval(-h);
            double best_theta = 0.0;
            double best_f = f;
            if (f_plus < best_f) {
                best_theta = h;
                best_f = f_plus;
            }
            if (f_minus < best_f) {
                best_theta = -h;
                best_f = f_minus;
            }

            // Parabolic proposal through (-h, 0, h), then step halving until
            // it beats the best probe.
            const double curvature = f_plus - 2.0 * f + f_minus;
            if (curvature > 0.0) {
                double theta = h * (f_minus - f_plus) / (2.0 * curvature);
                theta = std::clamp(theta, -4.0 * h, 4.0 * h);
                for (int k = 0; k < kHalvings && theta != 0.0; ++k, theta *= 0.5) {
                    const double f_theta = eval(theta);
                    if (f_theta < best_f) {
                        best_theta = theta;
                        best_f = f_theta;
                        break;
                    }
                }
            }

            if (best_theta != 0.0) {
                target = target * rot(best_theta);
                f = best_f;
                h = std::clamp(2.0 * std::abs(best_theta), kMinStep, kMaxStep);
            } else {
                h = std::max(0.5 * h, kMinStep);
            }
        }
        if (f_start - f < kImprovementTol) {
            if (++quiet_sweeps >= 3) {
                ++sweep;
                break;
            }
        } else {
            quiet_sweeps = 0;
        }
    }
    return {f, sweep};
}

} // namespace

OracleResult is_classical(const DensityMatrix &rho, const OracleOptions &options) {
    if (rho.kind() != StateKind::bipartite) {
        throw DimensionError("is_classical needs a bipartite state");
    }
    if (options.restarts < 1) {
        throw Error("is_classical: restarts must be >= 1");
    }
    const int n = rho.local_dim();
    const GeneratorBasis basis = build_generators(n);
    std::vector<Rotation> rotations;
    rotations.reserve(basis.size());
    for (const auto &g : basis.generators) {
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(g);
        rotations.push_back({solver.eigenvectors(), solver.eigenvalues()});
    }

    const int restarts = options.restarts;
    std::vector<double> residuals(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic) if (options.exec == Exec::parallel)
    for (int r = 0; r < restarts; ++r) {
        Rng rng = make_stream(options.seed, static_cast<std::uint64_t>(r));
        CMatrix ua = haar_unitary(n, rng);
        CMatrix ub = haar_unitary(n, rng);
        residuals[static_cast<std::size_t>(r)] =
            descend(rho.matrix(), rotations, std::move(ua), std::move(ub), options.max_sweeps).residual;
    }

    OracleResult result;
    const auto best = std::min_element(residuals.begin(), residuals.end());
    result.best_restart = static_cast<int>(best - residuals.begin());
    result.residual = *best;
    result.classical = result.residual < options.tol;
    return result;
}

} // namespace qcw
