#include <doctest.h>

#include "oracles.hpp"
#include "qcwitness/bloch.hpp"
#include "qcwitness/classicality_oracle.hpp"
#include "qcwitness/state_factory.hpp"
#include "qcwitness/witness.hpp"

using namespace qcw;

namespace {

DensityMatrix diagonal_pair(double p) {
    CMatrix d = CMatrix::Zero(4, 4);
    d(0, 0) = p;
    d(3, 3) = 1.0 - p;
    return DensityMatrix::bipartite(d, 2);
}

std::vector<double> to_std(const RVector &v) { return {v.data(), v.data() + v.size()}; }

} // namespace

TEST_CASE("build_observables") {
    const GeneratorBasis b2 = build_generators(2);
    SUBCASE("qubit set has 10 observables, the last built from the directions") {
        const auto obs = build_observables(b2, RVector::Unit(3, 2), RVector::Unit(3, 2));
        CHECK(obs.size() == 10);
        const CMatrix id = CMatrix::Identity(2, 2);
        const CMatrix expected =
            test::kron_naive(test::pauli_z(), id) + test::kron_naive(id, test::pauli_z());
        CHECK(test::matrices_close(obs.observable(9), expected, 1e-15));
    }
    SUBCASE("flat index runs row-major over generator pairs") {
        const auto obs = build_observables(b2, RVector::Unit(3, 0), RVector::Unit(3, 1));
        CHECK(obs.pair_index(0) == std::pair{0, 0});
        CHECK(obs.pair_index(1) == std::pair{0, 1});
        CHECK(obs.pair_index(3) == std::pair{1, 0});
        CHECK(obs.pair_index(8) == std::pair{2, 2});
        CHECK(test::matrices_close(obs.observable(1), test::kron_naive(test::pauli_x(), test::pauli_y()),
                                   1e-15));
        CHECK_THROWS_AS(obs.pair_index(9), DimensionError);
        CHECK_THROWS_AS(obs.observable(10), DimensionError);
    }
    SUBCASE("qutrit set has 65 Hermitian observables") {
        Rng rng(1);
        const auto obs = build_observables(build_generators(3), sample_direction(rng, 8),
                                           sample_direction(rng, 8));
        const auto all = obs.materialize();
        CHECK(all.size() == 65);
        for (const auto &o : all) {
            CHECK((o - o.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
    SUBCASE("rejects unnormalized or mis-sized directions") {
        CHECK_THROWS_WITH(build_observables(b2, 2.0 * RVector::Unit(3, 2), RVector::Unit(3, 2)),
                          "direction not normalized");
        CHECK_THROWS_AS(build_observables(b2, RVector::Unit(4, 2), RVector::Unit(3, 2)), DimensionError);
    }
}

TEST_CASE("sample_direction") {
    SUBCASE("deterministic per seed") {
        Rng a(7), b(7);
        CHECK(sample_direction(a, 3) == sample_direction(b, 3));
    }
    SUBCASE("unit norm") {
        Rng rng(3);
        for (int k = 0; k < 1000; ++k) {
            CHECK(std::abs(sample_direction(rng, 1 + k % 9).norm() - 1.0) < 1e-12);
        }
    }
    SUBCASE("isotropic: the sample mean of 1e4 draws in R^3 is near zero") {
        // Each component of a uniform unit vector in R^3 has variance 1/3, so
        // the mean of 1e4 draws has per-component sd 0.0058; 3 sd in norm
        // over three components stays below 0.05.
        Rng rng(2025);
        RVector mean = RVector::Zero(3);
        for (int k = 0; k < 10000; ++k) {
            mean += sample_direction(rng, 3);
        }
        mean /= 10000.0;
        CHECK(mean.norm() < 0.05);
    }
    SUBCASE("dim < 1") {
        Rng rng(1);
        CHECK_THROWS_AS(sample_direction(rng, 0), DimensionError);
    }
}

TEST_CASE("expectations") {
    const GeneratorBasis b2 = build_generators(2);
    const auto obs_z = build_observables(b2, RVector::Unit(3, 2), RVector::Unit(3, 2));

    SUBCASE("maximally mixed state: all zeros") {
        Rng rng(4);
        const auto obs = build_observables(b2, sample_direction(rng, 3), sample_direction(rng, 3));
        CHECK(expectations(maximally_mixed(2), obs).cwiseAbs().maxCoeff() < 1e-16);
    }
    SUBCASE("Bell state") {
        const RVector e = expectations(max_entangled(2), obs_z);
        RVector expected = RVector::Zero(10);
        expected(0) = 1.0;  // (x, x)
        expected(4) = -1.0; // (y, y)
        expected(8) = 1.0;  // (z, z)
        CHECK((e - expected).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("diagonal pair p|00><00| + (1-p)|11><11|") {
        for (double p : {0.1, 0.5, 0.7}) {
            const RVector e = expectations(diagonal_pair(p), obs_z);
            CHECK(e(8) == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(e(9) == doctest::Approx(2.0 * (2.0 * p - 1.0)).epsilon(1e-14));
        }
    }
    SUBCASE("agrees with Tr(O rho) on materialized observables") {
        Rng rng(77);
        for (int n = 2; n <= 3; ++n) {
            const GeneratorBasis b = build_generators(n);
            const int m = n * n - 1;
            for (int rep = 0; rep < 5; ++rep) {
                const auto rho = random_bipartite_density(n, rng);
                const auto obs = build_observables(b, sample_direction(rng, m), sample_direction(rng, m));
                const RVector fast = expectations(rho, obs);
                const auto ops = obs.materialize();
                for (std::size_t k = 0; k < ops.size(); ++k) {
                    const Complex ref = test::expectation(rho.matrix(), ops[k]);
                    CHECK(std::abs(ref.imag()) < 1e-12);
                    CHECK(std::abs(fast(static_cast<Eigen::Index>(k)) - ref.real()) < 1e-12);
                }
            }
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(expectations(maximally_mixed(3), obs_z), DimensionError);
    }
}

TEST_CASE("witness_value") {
    CHECK(witness_value(RVector::Zero(10)) == 0.0);
    RVector one = RVector::Zero(10);
    one(4) = -0.37;
    CHECK(witness_value(one) == 0.0);
    RVector bell = RVector::Zero(10);
    bell(0) = 1.0;
    bell(4) = -1.0;
    bell(8) = 1.0;
    CHECK(witness_value(bell) == doctest::Approx(3.0).epsilon(1e-15));

    SUBCASE("shortcut equals the direct pairwise sum") {
        Rng rng(31);
        std::normal_distribution<double> normal;
        for (int len : {1, 2, 3, 10, 65, 500, 4097}) {
            for (int rep = 0; rep < 10; ++rep) {
                RVector e(len);
                for (auto &x : e) x = normal(rng);
                if (rep % 3 == 0) {
                    for (Eigen::Index k = 0; k < len; k += 2) e(k) = 0.0;
                }
                const double direct = test::pairwise_witness(to_std(e));
                const double fast = witness_value(e);
                CHECK(fast >= 0.0);
                CHECK(std::abs(fast - direct) <= 1e-12 * std::max(1.0, direct));
            }
        }
    }
}

TEST_CASE("classify") {
    const GeneratorBasis b2 = build_generators(2);

    SUBCASE("maximally mixed: certified, product-like, W = 0") {
        const auto r = classify(maximally_mixed(2), b2);
        CHECK(r.verdict == Verdict::certified_classical);
        CHECK(r.form.kind == IdentifiedForm::Kind::product_like);
        CHECK(r.w_value < 1e-30);
        CHECK(r.nonzero_count == 0);
        CHECK(r.samples_used == 8);
    }
    SUBCASE("equal diagonal pair: single correlation on (z, z)") {
        const auto r = classify(diagonal_pair(0.5), b2);
        CHECK(r.verdict == Verdict::certified_classical);
        CHECK(r.form.kind == IdentifiedForm::Kind::single_correlation);
        CHECK(r.form.i == 2);
        CHECK(r.form.j == 2);
        CHECK(to_string(r.form) == "SINGLE_CORRELATION(3,3)");
        CHECK(r.nonzero_count == 1);
    }
    SUBCASE("unequal diagonal pair is classical but not certified") {
        for (Seed seed = 0; seed < 20; ++seed) {
            const auto r = classify(diagonal_pair(0.7), b2, {8, 1e-9, seed, Exec::parallel});
            CHECK(r.verdict == Verdict::inconclusive);
            CHECK(r.form.kind == IdentifiedForm::Kind::none);
            CHECK(r.w_value > 1e-9);
        }
        CHECK(is_classical(diagonal_pair(0.7)).classical);
    }
    SUBCASE("Bell state") {
        const auto r = classify(max_entangled(2), b2);
        CHECK(r.verdict == Verdict::inconclusive);
        CHECK(r.w_value == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(r.nonzero_count == 3);
    }
    SUBCASE("report fields are consistent") {
        Rng rng(10);
        const auto rho = random_bipartite_density(2, rng);
        const auto r = classify(rho, b2, {5, 1e-9, 99, Exec::parallel});
        CHECK(r.sample_w.size() == 5);
        CHECK(r.w_value == *std::max_element(r.sample_w.begin(), r.sample_w.end()));
        CHECK(r.expectations.size() == 10);
        CHECK(witness_value(r.expectations) == r.sample_w.back());
        // The reported directions reproduce the reported expectations.
        const auto obs = build_observables(b2, r.z, r.w);
        CHECK((expectations(rho, obs) - r.expectations).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("argument errors") {
        CHECK_THROWS_AS(classify(maximally_mixed(2), b2, {0, 1e-9, 1, Exec::parallel}), Error);
        CHECK_THROWS_AS(classify(maximally_mixed(2), b2, {8, 0.0, 1, Exec::parallel}), Error);
        CHECK_THROWS_AS(classify(maximally_mixed(3), b2), DimensionError);
    }
}

TEST_CASE("X_ij forms are certified for every seed and identified") {
    for (int n = 2; n <= 4; ++n) {
        const GeneratorBasis b = build_generators(n);
        const int m = n * n - 1;
        for (int i = 0; i < m; i += (n == 4 ? 3 : 1)) {
            for (int j = 0; j < m; j += (n == 4 ? 2 : 1)) {
                const double t = 0.5 * admissible_t_max(b, i, j);
                const auto rho = x_form_state(b, i, j, t);
                for (Seed seed : {1u, 2u, 3u}) {
                    const auto r = classify(rho, b, {8, 1e-9, seed, Exec::parallel});
                    REQUIRE(r.verdict == Verdict::certified_classical);
                    CHECK(r.form.kind == IdentifiedForm::Kind::single_correlation);
                    CHECK(r.form.i == i);
                    CHECK(r.form.j == j);
                    // <g_i (x) g_j> = 4 t / n^2
                    CHECK(r.expectations(i * m + j) == doctest::Approx(4.0 * t / (n * n)));
                }
            }
        }
    }
}

TEST_CASE("uncorrelated forms (all t_ij = 0) are certified product-like and classical") {
    Rng rng(404);
    for (int n = 2; n <= 3; ++n) {
        const GeneratorBasis b = build_generators(n);
        const int m = n * n - 1;
        for (int rep = 0; rep < 10; ++rep) {
            const RVector r = 0.3 * sample_direction(rng, m);
            const RVector s = 0.3 * sample_direction(rng, m);
            const auto rho = uncorrelated_form_state(b, r, s);
            const auto report = classify(rho, b, {8, 1e-9, static_cast<Seed>(rep), Exec::parallel});
            CHECK(report.verdict == Verdict::certified_classical);
            CHECK(report.form.kind == IdentifiedForm::Kind::product_like);
            CHECK(report.nonzero_count == 1);
            CHECK(is_classical(rho).classical);
        }
    }
}

TEST_CASE("generic states are never certified") {
    Rng rng(9);
    for (int n = 2; n <= 3; ++n) {
        const GeneratorBasis b = build_generators(n);
        for (int rep = 0; rep < 100; ++rep) {
            const auto r = classify(random_bipartite_density(n, rng), b);
            CHECK(r.verdict == Verdict::inconclusive);
        }
    }
}

TEST_CASE("certified verdict implies at most one nonzero expectation") {
    Rng rng(15);
    const GeneratorBasis b = build_generators(2);
    for (int rep = 0; rep < 50; ++rep) {
        const int i = rep % 3, j = (rep / 3) % 3;
        const double t = std::uniform_real_distribution<double>(admissible_t_min(b, i, j),
                                                                admissible_t_max(b, i, j))(rng);
        const auto r = classify(x_form_state(b, i, j, t), b);
        CHECK((r.verdict == Verdict::certified_classical) == (r.form.kind != IdentifiedForm::Kind::none));
        if (r.verdict == Verdict::certified_classical) {
            CHECK(r.nonzero_count <= 1);
        }
    }
}
