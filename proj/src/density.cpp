#include "qcwitness/density.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qcw {

std::string ValidationReport::describe() const {
    if (!square) {
        return "matrix is not square";
    }
    std::ostringstream out;
    out.precision(17);
    out << "trace=" << trace.real();
    if (trace.imag() != 0.0) {
        out << (trace.imag() < 0 ? "-" : "+") << std::abs(trace.imag()) << "i";
    }
    out << (trace_ok ? " (ok)" : " (violation)");
    out << ", hermitian_deviation=" << hermitian_deviation << (hermitian_ok ? " (ok)" : " (violation)");
    out << ", min_eigenvalue=" << min_eigenvalue << (positive_ok ? " (ok)" : " (violation)");
    return out.str();
}

ValidationReport validate_state(const CMatrix &m, const StateTolerance &tol) {
    ValidationReport report;
    if (m.rows() != m.cols() || m.rows() == 0) {
        report.square = false;
        return report;
    }
    report.trace = m.trace();
    report.trace_ok = std::abs(report.trace - Complex{1.0, 0.0}) <= tol.trace;
    report.hermitian_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
    report.hermitian_ok = report.hermitian_deviation <= tol.hermitian;

    const CMatrix hermitian_part = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
    report.positive_ok = report.min_eigenvalue >= -tol.eigenvalue;
    return report;
}

DensityMatrix DensityMatrix::single(CMatrix m, const StateTolerance &tol) {
    auto report = validate_state(m, tol);
    if (!report.valid()) {
        throw InvalidStateError(report);
    }
    const int n = static_cast<int>(m.rows());
    return DensityMatrix(std::move(m), n, StateKind::single);
}

DensityMatrix DensityMatrix::bipartite(CMatrix m, int local_dim, const StateTolerance &tol) {
    if (local_dim < 1 || m.rows() != static_cast<Eigen::Index>(local_dim) * local_dim ||
        m.cols() != m.rows()) {
        throw DimensionError("bipartite state must be " + std::to_string(local_dim * local_dim) +
                             "x" + std::to_string(local_dim * local_dim));
    }
    auto report = validate_state(m, tol);
    if (!report.valid()) {
        throw InvalidStateError(report);
    }
    return DensityMatrix(std::move(m), local_dim, StateKind::bipartite);
}

} // namespace qcw
