#pragma once

#include "qcwitness/density.hpp"
#include "qcwitness/random.hpp"
#include "qcwitness/su_basis.hpp"
#include "qcwitness/types.hpp"

namespace qcw {

/// sum_ij p_ij |a_i><a_i| (x) |b_j><b_j|, with |a_i> the columns of basis_a
/// and |b_j> the columns of basis_b.
struct ClassicalSpec {
    int local_dim = 0;
    RMatrix probs; ///< n x n, nonnegative, sums to 1
    CMatrix basis_a;
    CMatrix basis_b;
};

/// Throws Error on negative or unnormalized probabilities (1e-12) and on
/// bases that are not unitary within 1e-12.
DensityMatrix classical_state(const ClassicalSpec &spec);

/// Throws DimensionError unless both factors are single-system states of equal dimension.
DensityMatrix product_state(const DensityMatrix &rho_a, const DensityMatrix &rho_b);

/// |Phi><Phi| with |Phi> = n^{-1/2} sum_i |ii>.
DensityMatrix max_entangled(int n);

DensityMatrix maximally_mixed(int n);

/// Ginibre ensemble: G G^dagger / Tr(G G^dagger) for square complex Gaussian G.
DensityMatrix random_density(int n_total, Rng &rng);
DensityMatrix random_bipartite_density(int n, Rng &rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with R's diagonal phases
/// absorbed into Q.
CMatrix haar_unitary(int n, Rng &rng);

/// Uniform on the probability simplex (flat Dirichlet), shaped n x n.
RMatrix random_probabilities(int n, Rng &rng);

/// (1/n^2) (I + t g_i (x) g_j), generator indices 0-based. Throws
/// InadmissibleError carrying the minimum eigenvalue if the operator is not
/// positive semidefinite.
DensityMatrix x_form_state(const GeneratorBasis &basis, int i, int j, double t);

/// Largest t >= 0 keeping (1/n^2)(I + t g_i (x) g_j) positive, by bisection on
/// the minimum eigenvalue.
double admissible_t_max(const GeneratorBasis &basis, int i, int j);
double admissible_t_max(int n, int i, int j);
/// Most negative admissible t, same procedure on the other side.
double admissible_t_min(const GeneratorBasis &basis, int i, int j);

/// (1/n^2) (I + sum r_i g_i (x) I + sum s_j I (x) g_j): every correlation
/// coefficient zero. Throws InadmissibleError if not positive semidefinite.
DensityMatrix uncorrelated_form_state(const GeneratorBasis &basis, const RVector &r,
                                      const RVector &s);

} // namespace qcw
