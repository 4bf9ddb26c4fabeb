#include "qcwitness/su_basis.hpp"

#include <algorithm>
#include <cmath>

#include "qcwitness/errors.hpp"

namespace qcw {

GeneratorBasis build_generators(int n) {
    if (n < 2) {
        throw DimensionError("dimension too small");
    }
    GeneratorBasis basis;
    basis.dim = n;
    basis.ordering_tag = "grouped:symmetric,antisymmetric,diagonal";
    const auto count = static_cast<std::size_t>(n * n - 1);
    basis.generators.reserve(count);
    basis.tags.reserve(count);

    const Complex i_unit{0.0, 1.0};
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            CMatrix g = CMatrix::Zero(n, n);
            g(j, k) = 1.0;
            g(k, j) = 1.0;
            basis.generators.push_back(std::move(g));
            basis.tags.push_back("sym(" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            CMatrix g = CMatrix::Zero(n, n);
            g(j, k) = -i_unit;
            g(k, j) = i_unit;
            basis.generators.push_back(std::move(g));
            basis.tags.push_back("asym(" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
        }
    }
    for (int l = 1; l < n; ++l) {
        const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
        CMatrix g = CMatrix::Zero(n, n);
        for (int m = 0; m < l; ++m) {
            g(m, m) = scale;
        }
        g(l, l) = -scale * l;
        basis.generators.push_back(std::move(g));
        basis.tags.push_back("diag(" + std::to_string(l) + ")");
    }
    return basis;
}

const char *to_string(BasisViolation::Kind kind) {
    switch (kind) {
    case BasisViolation::Kind::count:
        return "count";
    case BasisViolation::Kind::hermiticity:
        return "hermiticity";
    case BasisViolation::Kind::trace:
        return "trace";
    case BasisViolation::Kind::orthogonality:
        return "orthogonality";
    case BasisViolation::Kind::normalization:
        return "normalization";
    }
    return "unknown";
}

BasisReport verify_basis(const GeneratorBasis &basis, double tol) {
    BasisReport report;
    auto flag = [&](BasisViolation::Kind kind, int i, int j, double magnitude) {
        if (magnitude > tol) {
            report.ok = false;
            report.violations.push_back({kind, i, j, magnitude});
        }
    };

    const int n = basis.dim;
    const auto expected = static_cast<std::size_t>(std::max(n * n - 1, 0));
    if (basis.size() != expected) {
        report.ok = false;
        report.violations.push_back({BasisViolation::Kind::count, -1, -1,
                                     std::abs(static_cast<double>(basis.size()) -
                                              static_cast<double>(expected))});
    }

    const int m = static_cast<int>(basis.size());
    for (int i = 0; i < m; ++i) {
        const CMatrix &g = basis[i];
        if (g.rows() != n || g.cols() != n) {
            report.ok = false;
            report.violations.push_back({BasisViolation::Kind::count, i, -1, 0.0});
            continue;
        }
        flag(BasisViolation::Kind::hermiticity, i, i, (g - g.adjoint()).cwiseAbs().maxCoeff());
        flag(BasisViolation::Kind::trace, i, i, std::abs(g.trace()));
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            if (basis[i].rows() != n || basis[j].rows() != n) {
                continue;
            }
            // Tr(A B) without forming the product.
            const Complex tr = (basis[i].transpose().cwiseProduct(basis[j])).sum();
            const double target = (i == j) ? 2.0 : 0.0;
            const double err = std::abs(tr - target);
            report.max_orthogonality_error = std::max(report.max_orthogonality_error, err);
            flag(i == j ? BasisViolation::Kind::normalization : BasisViolation::Kind::orthogonality,
                 i, j, err);
        }
    }
    return report;
}

} // namespace qcw
