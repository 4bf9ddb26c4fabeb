#pragma once

#include <string>

#include "qcwitness/errors.hpp"
#include "qcwitness/types.hpp"

namespace qcw {

/// Per-condition slack used when admitting a matrix as a state.
struct StateTolerance {
    double hermitian = 1e-12;
    double trace = 1e-12;
    double eigenvalue = 1e-10;
};

/// Outcome of checking unit trace, Hermiticity and positivity.
struct ValidationReport {
    bool square = true;
    bool trace_ok = false;
    bool hermitian_ok = false;
    bool positive_ok = false;
    Complex trace{0.0, 0.0};
    double hermitian_deviation = 0.0; ///< max |M - M^dagger| entrywise
    double min_eigenvalue = 0.0;      ///< of the Hermitian part of M

    bool valid() const noexcept { return square && trace_ok && hermitian_ok && positive_ok; }
    std::string describe() const;
};

ValidationReport validate_state(const CMatrix &m, const StateTolerance &tol);

/// Single-tolerance form: trace, Hermiticity and -min eigenvalue all against tol.
inline ValidationReport validate_state(const CMatrix &m, double tol) {
    return validate_state(m, StateTolerance{tol, tol, tol});
}

class InvalidStateError : public Error {
  public:
    explicit InvalidStateError(ValidationReport report)
        : Error("invalid state: " + report.describe()), report_(report) {}
    const ValidationReport &report() const noexcept { return report_; }

  private:
    ValidationReport report_;
};

enum class StateKind { single, bipartite };

/// A validated density matrix. Bipartite states live on C^n (x) C^n with
/// n = local_dim(); single-system states have local_dim() == dim().
class DensityMatrix {
  public:
    /// Throws InvalidStateError if m fails validation.
    static DensityMatrix single(CMatrix m, const StateTolerance &tol = {});
    /// Throws DimensionError unless m is local_dim^2 square.
    static DensityMatrix bipartite(CMatrix m, int local_dim, const StateTolerance &tol = {});

    const CMatrix &matrix() const noexcept { return rho_; }
    int dim() const noexcept { return static_cast<int>(rho_.rows()); }
    int local_dim() const noexcept { return local_dim_; }
    StateKind kind() const noexcept { return kind_; }

  private:
    DensityMatrix(CMatrix rho, int local_dim, StateKind kind)
        : rho_(std::move(rho)), local_dim_(local_dim), kind_(kind) {}

    CMatrix rho_;
    int local_dim_;
    StateKind kind_;
};

} // namespace qcw
