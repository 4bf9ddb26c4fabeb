#include "qcwitness/witness.hpp"

#include <algorithm>
#include <cmath>

#include "qcwitness/errors.hpp"
#include "qcwitness/linalg.hpp"

namespace qcw {

namespace {

constexpr double kUnitNormTol = 1e-10;

CMatrix weighted_sum(const GeneratorBasis &basis, const RVector &coeffs) {
    CMatrix out = CMatrix::Zero(basis.dim, basis.dim);
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        out += coeffs(i) * basis[i];
    }
    return out;
}

} // namespace

ObservableSet::ObservableSet(GeneratorBasis basis, RVector z, RVector w)
    : basis_(std::move(basis)), z_(std::move(z)), w_(std::move(w)) {}

std::pair<int, int> ObservableSet::pair_index(std::size_t k) const {
    const std::size_t m = basis_.size();
    if (k >= pair_count()) {
        throw DimensionError("pair_index: " + std::to_string(k) + " is not a generator pair");
    }
    return {static_cast<int>(k / m), static_cast<int>(k % m)};
}

CMatrix ObservableSet::observable(std::size_t k) const {
    if (k < pair_count()) {
        const auto [i, j] = pair_index(k);
        return kron(basis_[i], basis_[j]);
    }
    if (k == direction_index()) {
        const CMatrix id = CMatrix::Identity(basis_.dim, basis_.dim);
        return kron(weighted_sum(basis_, z_), id) + kron(id, weighted_sum(basis_, w_));
    }
    throw DimensionError("observable index " + std::to_string(k) + " out of range");
}

std::vector<CMatrix> ObservableSet::materialize() const {
    std::vector<CMatrix> out;
    out.reserve(size());
    for (std::size_t k = 0; k < size(); ++k) {
        out.push_back(observable(k));
    }
    return out;
}

ObservableSet build_observables(const GeneratorBasis &basis, RVector z, RVector w) {
    const auto m = static_cast<Eigen::Index>(basis.size());
    if (z.size() != m || w.size() != m) {
        throw DimensionError("direction length must be " + std::to_string(m));
    }
    if (std::abs(z.norm() - 1.0) > kUnitNormTol || std::abs(w.norm() - 1.0) > kUnitNormTol) {
        throw Error("direction not normalized");
    }
    return ObservableSet(basis, std::move(z), std::move(w));
}

RVector sample_direction(Rng &rng, int dim) {
    if (dim < 1) {
        throw DimensionError("sample_direction: dim must be >= 1");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    RVector v(dim);
    double norm = 0.0;
    do {
        for (int i = 0; i < dim; ++i) {
            v(i) = normal(rng);
        }
        norm = v.norm();
    } while (norm == 0.0);
    return v / norm;
}

RVector expectations_from_traces(const TraceTable &traces, const RVector &z, const RVector &w) {
    const auto m = traces.joint.rows();
    RVector e(m * m + 1);
    double last_re = 0.0;
    double last_im = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            e(i * m + j) = real_checked(traces.joint(i, j), "expectation");
        }
        const Complex d = z(i) * traces.left(i) + w(i) * traces.right(i);
        last_re += d.real();
        last_im += d.imag();
    }
    e(m * m) = real_checked({last_re, last_im}, "direction expectation");
    return e;
}

RVector expectations(const DensityMatrix &rho, const ObservableSet &obs, Exec exec) {
    if (rho.kind() != StateKind::bipartite || rho.local_dim() != obs.local_dim()) {
        throw DimensionError("expectations: state and observables have different dimensions");
    }
    const TraceTable traces = kernels::generator_traces(rho.matrix(), obs.basis(), exec);
    return expectations_from_traces(traces, obs.z(), obs.w());
}

double witness_value(std::span<const double> e) {
    double abs_sum = 0.0;
    double sq_sum = 0.0;
    for (double x : e) {
        abs_sum += std::abs(x);
        sq_sum += x * x;
    }
    // Rounding can push a single-nonzero vector a hair below zero.
    return std::max(0.0, 0.5 * (abs_sum * abs_sum - sq_sum));
}

namespace {

struct SampleOutcome {
    double w = 0.0;
    int nonzero = 0;
    RVector e;
    RVector z;
    RVector w_dir;
};

} // namespace

WitnessReport classify(const DensityMatrix &rho, const GeneratorBasis &basis,
                       const ClassifyOptions &options) {
    if (options.samples < 1) {
        throw Error("classify: samples must be >= 1");
    }
    if (!(options.tol > 0.0)) {
        throw Error("classify: tol must be > 0");
    }
    if (rho.kind() != StateKind::bipartite || rho.local_dim() != basis.dim) {
        throw DimensionError("classify: state and basis have different dimensions");
    }

    const TraceTable traces = kernels::generator_traces(rho.matrix(), basis, options.exec);
    const int m = static_cast<int>(basis.size());
    const int samples = options.samples;
    std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(samples));

#pragma omp parallel for schedule(static) if (options.exec == Exec::parallel)
    for (int s = 0; s < samples; ++s) {
        Rng rng = make_stream(options.seed, static_cast<std::uint64_t>(s));
        SampleOutcome &out = outcomes[static_cast<std::size_t>(s)];
        out.z = sample_direction(rng, m);
        out.w_dir = sample_direction(rng, m);
        out.e = expectations_from_traces(traces, out.z, out.w_dir);
        out.w = witness_value(out.e);
        out.nonzero = static_cast<int>((out.e.array().abs() > options.tol).count());
    }

    WitnessReport report;
    report.samples_used = samples;
    report.tol = options.tol;
    bool certified = true;
    for (const auto &out : outcomes) {
        report.sample_w.push_back(out.w);
        report.w_value = std::max(report.w_value, out.w);
        report.nonzero_count = std::max(report.nonzero_count, out.nonzero);
        if (out.w > options.tol || out.nonzero > 1) {
            certified = false;
        }
    }
    const SampleOutcome &last = outcomes.back();
    report.expectations = last.e;
    report.z = last.z;
    report.w = last.w_dir;

    if (certified) {
        report.verdict = Verdict::certified_classical;
        report.form.kind = IdentifiedForm::Kind::product_like;
        const auto pairs = static_cast<Eigen::Index>(m) * m;
        for (Eigen::Index k = 0; k < pairs; ++k) {
            if (std::abs(last.e(k)) > options.tol) {
                report.form = {IdentifiedForm::Kind::single_correlation, static_cast<int>(k / m),
                               static_cast<int>(k % m)};
                break;
            }
        }
    }
    return report;
}

const char *to_string(Verdict verdict) {
    return verdict == Verdict::certified_classical ? "CERTIFIED_CLASSICAL" : "INCONCLUSIVE";
}

std::string to_string(const IdentifiedForm &form) {
    switch (form.kind) {
    case IdentifiedForm::Kind::none:
        return "NONE";
    case IdentifiedForm::Kind::product_like:
        return "PRODUCT_LIKE";
    case IdentifiedForm::Kind::single_correlation:
        return "SINGLE_CORRELATION(" + std::to_string(form.i + 1) + "," + std::to_string(form.j + 1) +
               ")";
    }
    return "NONE";
}

} // namespace qcw
