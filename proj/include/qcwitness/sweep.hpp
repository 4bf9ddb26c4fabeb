#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcwitness/density.hpp"
#include "qcwitness/random.hpp"
#include "qcwitness/types.hpp"
#include "qcwitness/witness.hpp"

namespace qcw {

enum class Family { classical_aligned, classical_rotated, product, x_form, max_entangled, ginibre };

const char *to_string(Family family);
/// Throws ParseError on an unknown name.
Family parse_family(std::string_view name);

/// Which factor of a product state is replaced by the maximally mixed state.
enum class MixedSide { none, a, b };

struct GenerateParams {
    std::optional<int> i; ///< x_form generator indices, 0-based
    std::optional<int> j;
    std::optional<double> t;
    std::optional<RMatrix> probs;     ///< classical families
    MixedSide mixed_side = MixedSide::b; ///< product family
};

struct GeneratedState {
    DensityMatrix state;
    /// Human-readable "key: value" lines describing the drawn parameters.
    std::vector<std::string> echo;
};

/// Builds one state of the family. Unset parameters are drawn from rng:
/// x_form picks (i, j) uniformly and t uniformly in the admissible range;
/// classical families draw flat-Dirichlet probabilities; classical_rotated
/// draws Haar local bases; product draws Ginibre factors.
/// Throws InadmissibleError for x_form parameters outside positivity.
GeneratedState generate_state(Family family, int dim, const GenerateParams &params, Rng &rng);

struct FamilyRequest {
    Family family;
    int dim = 2;
    int count = 0;
};

struct SweepConfig {
    Seed seed = 42;
    int samples = 8;
    double tol = 1e-9;
    int oracle_restarts = 20;
    double oracle_tol = 1e-10;
    int oracle_max_dim = 3;
    std::vector<FamilyRequest> families;
};

/// JSON: {"seed", "samples", "tol", "oracle_restarts", "oracle_tol",
/// "oracle_max_dim", "families": [{"family", "dim", "count"}, ...]}. Only
/// "families" is required. Throws ParseError.
SweepConfig parse_sweep_config(std::string_view text);

struct SweepRecord {
    std::string state_id;
    Family family;
    int dim = 0;
    double w_value = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::optional<bool> oracle_classical; ///< unset when dim > oracle_max_dim
    double oracle_residual = 0.0;
    Seed seed = 0;
};

/// One record per requested state, in config order. Row k uses seed
/// derive_seed(config.seed, k); rows run concurrently under Exec::parallel
/// and the output does not depend on scheduling.
std::vector<SweepRecord> run_sweep(const SweepConfig &config, Exec exec = Exec::parallel);

/// Header: state_id,family,dim,w_value,verdict,oracle_classical,seed
void write_sweep_csv(std::ostream &out, const std::vector<SweepRecord> &records);

struct FamilySummary {
    Family family;
    int dim = 0;
    int count = 0;
    int certified = 0;
    int oracle_true = 0;
    int oracle_checked = 0;
    /// certified rows the oracle rejects, plus classical-family rows it rejects
    int contradictions = 0;
    double rate() const { return count ? static_cast<double>(certified) / count : 0.0; }
};

std::vector<FamilySummary> summarize(const std::vector<SweepRecord> &records);
void write_sweep_summary(std::ostream &out, const std::vector<FamilySummary> &summary);

} // namespace qcw
