#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "qcwitness/types.hpp"
#include "qcwitness/witness.hpp"

namespace qcw::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kInvalidState = 3, kInadmissible = 4 };

int cmd_generators(int dim, std::ostream &out, std::ostream &err);

int cmd_witness(const std::string &path, const ClassifyOptions &options, std::ostream &out,
                std::ostream &err);

int cmd_decompose(const std::string &path, std::ostream &out, std::ostream &err);

struct GenerateOptions {
    std::string family;
    int dim = 2;
    std::optional<int> i; ///< 1-based, as on the command line
    std::optional<int> j;
    std::optional<double> t;
    std::optional<std::string> probs; ///< comma-separated, row-major n x n
    std::string mixed_side = "B";
    Seed seed = 42;
    std::string out_path;
};

int cmd_generate(const GenerateOptions &options, std::ostream &out, std::ostream &err);

struct SweepOptions {
    std::string config_path;
    std::string out_path; ///< empty: CSV to out, summary to err
    std::optional<Seed> seed;
    std::optional<int> samples;
    std::optional<double> tol;
};

int cmd_sweep(const SweepOptions &options, std::ostream &out, std::ostream &err);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace qcw::cli
