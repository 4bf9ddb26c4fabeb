#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcwitness/density.hpp"
#include "qcwitness/kernels.hpp"
#include "qcwitness/random.hpp"
#include "qcwitness/su_basis.hpp"
#include "qcwitness/types.hpp"

namespace qcw {

/// The (n^2-1)^2 + 1 observables: g_i (x) g_j at flat index k = i (n^2-1) + j
/// (row-major, 0-based), then the direction observable
/// (z.g) (x) I + I (x) (w.g) at index (n^2-1)^2.
///
/// Operators are materialized on demand; at n = 8 the full list would be
/// several hundred MB.
class ObservableSet {
  public:
    ObservableSet(GeneratorBasis basis, RVector z, RVector w);

    int local_dim() const noexcept { return basis_.dim; }
    std::size_t size() const noexcept { return pair_count() + 1; }
    std::size_t pair_count() const noexcept { return basis_.size() * basis_.size(); }
    std::size_t direction_index() const noexcept { return pair_count(); }

    /// (i, j) for k < pair_count().
    std::pair<int, int> pair_index(std::size_t k) const;
    CMatrix observable(std::size_t k) const;
    std::vector<CMatrix> materialize() const;

    const RVector &z() const noexcept { return z_; }
    const RVector &w() const noexcept { return w_; }
    const GeneratorBasis &basis() const noexcept { return basis_; }

  private:
    GeneratorBasis basis_;
    RVector z_;
    RVector w_;
};

/// Throws Error("direction not normalized") unless |z| = |w| = 1 within 1e-10,
/// DimensionError on a length mismatch.
ObservableSet build_observables(const GeneratorBasis &basis, RVector z, RVector w);

/// Isotropic unit vector: standard normal components, normalized. Throws
/// DimensionError for dim < 1.
RVector sample_direction(Rng &rng, int dim);

/// <O_k> = Tr(O_k rho), asserted real within 1e-12.
RVector expectations(const DensityMatrix &rho, const ObservableSet &obs, Exec exec = Exec::parallel);

/// Assembles the expectation vector from precomputed generator traces. The
/// pair entries do not depend on the directions.
RVector expectations_from_traces(const TraceTable &traces, const RVector &z, const RVector &w);

/// W = sum_{i<j} |e_i e_j|, computed as ((sum |e_i|)^2 - sum e_i^2) / 2.
double witness_value(std::span<const double> e);
inline double witness_value(const RVector &e) {
    return witness_value(std::span<const double>(e.data(), static_cast<std::size_t>(e.size())));
}

enum class Verdict { certified_classical, inconclusive };

struct IdentifiedForm {
    enum class Kind { none, product_like, single_correlation };
    Kind kind = Kind::none;
    int i = -1; ///< 0-based generator index, single_correlation only
    int j = -1;
};

struct ClassifyOptions {
    int samples = 8;
    double tol = 1e-9;
    Seed seed = 42;
    Exec exec = Exec::parallel;
};

struct WitnessReport {
    RVector expectations;         ///< from the last direction sample
    double w_value = 0.0;         ///< max W over samples
    std::vector<double> sample_w; ///< W per direction sample
    int nonzero_count = 0;        ///< max over samples of #{k : |e_k| > tol}
    Verdict verdict = Verdict::inconclusive;
    IdentifiedForm form;
    int samples_used = 0;
    double tol = 0.0;
    RVector z; ///< directions of the last sample
    RVector w;
};

/// Certifies classicality iff, for every one of `samples` independent
/// direction pairs, W <= tol and at most one expectation exceeds tol.
/// Direction pair s draws from stream derive_seed(seed, s), so the result
/// does not depend on exec. Throws Error for samples < 1 or tol <= 0.
WitnessReport classify(const DensityMatrix &rho, const GeneratorBasis &basis,
                       const ClassifyOptions &options = {});

const char *to_string(Verdict verdict);
/// Generator indices print 1-based, e.g. SINGLE_CORRELATION(3,3) for sigma_z (x) sigma_z.
std::string to_string(const IdentifiedForm &form);

} // namespace qcw
