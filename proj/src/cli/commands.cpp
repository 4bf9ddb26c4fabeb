#include "qcwitness/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "qcwitness/bloch.hpp"
#include "qcwitness/matrix_file.hpp"
#include "qcwitness/state_factory.hpp"
#include "qcwitness/su_basis.hpp"
#include "qcwitness/sweep.hpp"

namespace qcw::cli {

namespace {

std::string format_complex(Complex z) {
    if (z.imag() == 0.0) {
        return format_double(z.real());
    }
    return format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") +
           format_double(std::abs(z.imag())) + "i";
}

void print_vector(std::ostream &out, const char *name, const RVector &v) {
    out << name << ":";
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out << ' ' << format_double(v(k));
    }
    out << '\n';
}

// Load + validate; returns an exit code on failure.
std::optional<DensityMatrix> load_bipartite(const std::string &path, std::ostream &err, int &code) {
    MatrixFile file;
    try {
        file = read_matrix_file(path);
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        code = kInputError;
        return std::nullopt;
    }
    if (file.kind != StateKind::bipartite || file.local_dim < 2) {
        err << "error: expected a bipartite state with local_dim >= 2\n";
        code = kInputError;
        return std::nullopt;
    }
    try {
        return to_state(file);
    } catch (const InvalidStateError &e) {
        const auto &r = e.report();
        err << "error: invalid state\n";
        err << "  trace: " << format_complex(r.trace) << (r.trace_ok ? " ok" : " VIOLATION") << '\n';
        err << "  hermitian_deviation: " << format_double(r.hermitian_deviation)
            << (r.hermitian_ok ? " ok" : " VIOLATION") << '\n';
        err << "  min_eigenvalue: " << format_double(r.min_eigenvalue)
            << (r.positive_ok ? " ok" : " VIOLATION") << '\n';
        code = kInvalidState;
        return std::nullopt;
    }
}

std::optional<RMatrix> parse_probs(const std::string &text, int n) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) {
                return std::nullopt;
            }
        } catch (const std::exception &) {
            return std::nullopt;
        }
    }
    if (static_cast<int>(values.size()) != n * n) {
        return std::nullopt;
    }
    RMatrix p(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            p(r, c) = values[static_cast<std::size_t>(r * n + c)];
        }
    }
    return p;
}

std::string observable_label(std::size_t k, std::size_t m) {
    if (k == m * m) {
        return "direction";
    }
    return "(" + std::to_string(k / m + 1) + "," + std::to_string(k % m + 1) + ")";
}

} // namespace

int cmd_generators(int dim, std::ostream &out, std::ostream &err) {
    GeneratorBasis basis;
    try {
        basis = build_generators(dim);
    } catch (const DimensionError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    out << "dim: " << basis.dim << '\n';
    out << "count: " << basis.size() << '\n';
    out << "ordering: " << basis.ordering_tag << '\n';
    for (std::size_t k = 0; k < basis.size(); ++k) {
        out << "generator " << k + 1 << " " << basis.tags[k] << '\n';
        const CMatrix &g = basis[k];
        for (Eigen::Index r = 0; r < g.rows(); ++r) {
            out << " ";
            for (Eigen::Index c = 0; c < g.cols(); ++c) {
                out << ' ' << format_complex(g(r, c));
            }
            out << '\n';
        }
    }
    const BasisReport report = verify_basis(basis, 1e-12);
    out << "orthogonality: " << (report.ok ? "OK" : "FAILED")
        << " (max |Tr(g_i g_j) - 2 delta_ij| = " << format_double(report.max_orthogonality_error)
        << ")\n";
    return report.ok ? kOk : kInputError;
}

int cmd_witness(const std::string &path, const ClassifyOptions &options, std::ostream &out,
                std::ostream &err) {
    int code = kOk;
    const auto rho = load_bipartite(path, err, code);
    if (!rho) {
        return code;
    }
    if (options.samples < 1 || !(options.tol > 0.0)) {
        err << "error: --samples must be >= 1 and --tol > 0\n";
        return kInputError;
    }
    const GeneratorBasis basis = build_generators(rho->local_dim());
    const WitnessReport report = classify(*rho, basis, options);

    out << "local_dim: " << rho->local_dim() << '\n';
    out << "samples: " << report.samples_used << '\n';
    out << "tol: " << format_double(report.tol) << '\n';
    out << "seed: " << options.seed << '\n';
    for (std::size_t s = 0; s < report.sample_w.size(); ++s) {
        out << "sample " << s + 1 << " W: " << format_double(report.sample_w[s]) << '\n';
    }
    out << "W: " << format_double(report.w_value) << '\n';
    out << "verdict: " << to_string(report.verdict) << '\n';
    out << "identified_form: " << to_string(report.form) << '\n';
    out << "nonzero_count: " << report.nonzero_count << '\n';

    const auto m = basis.size();
    std::vector<std::size_t> order(static_cast<std::size_t>(report.expectations.size()));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(report.expectations(static_cast<Eigen::Index>(a))) >
               std::abs(report.expectations(static_cast<Eigen::Index>(b)));
    });
    out << "top_expectations:\n";
    for (std::size_t k = 0; k < std::min<std::size_t>(5, order.size()); ++k) {
        out << "  " << observable_label(order[k], m) << ' '
            << format_double(report.expectations(static_cast<Eigen::Index>(order[k]))) << '\n';
    }
    return kOk;
}

int cmd_decompose(const std::string &path, std::ostream &out, std::ostream &err) {
    int code = kOk;
    const auto rho = load_bipartite(path, err, code);
    if (!rho) {
        return code;
    }
    const GeneratorBasis basis = build_generators(rho->local_dim());
    const BlochDecomposition dec = decompose(*rho, basis);
    const double round_trip = (reconstruct(dec, basis) - rho->matrix()).cwiseAbs().maxCoeff();
    const double product_residual = (dec.t - dec.r * dec.s.transpose()).cwiseAbs().maxCoeff();

    out << "local_dim: " << dec.local_dim << '\n';
    print_vector(out, "r", dec.r);
    out << "r_norm: " << format_double(dec.r.norm()) << '\n';
    print_vector(out, "s", dec.s);
    out << "s_norm: " << format_double(dec.s.norm()) << '\n';
    out << "T:\n";
    for (Eigen::Index i = 0; i < dec.t.rows(); ++i) {
        out << " ";
        for (Eigen::Index j = 0; j < dec.t.cols(); ++j) {
            out << ' ' << format_double(dec.t(i, j));
        }
        out << '\n';
    }
    out << "T_norm: " << format_double(dec.t.norm()) << '\n';
    out << "round_trip_residual: " << format_double(round_trip) << '\n';
    out << "product_residual: " << format_double(product_residual) << '\n';
    return kOk;
}

int cmd_generate(const GenerateOptions &options, std::ostream &out, std::ostream &err) {
    Family family;
    try {
        family = parse_family(options.family);
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    if (options.dim < 2) {
        err << "error: dimension too small\n";
        return kInputError;
    }
    GenerateParams params;
    const int m = options.dim * options.dim - 1;
    if (family == Family::x_form) {
        if (options.i.has_value() != options.j.has_value()) {
            err << "error: --i and --j go together\n";
            return kInputError;
        }
        if (options.i && (*options.i < 1 || *options.i > m || *options.j < 1 || *options.j > m)) {
            err << "error: --i/--j must lie in 1.." << m << '\n';
            return kInputError;
        }
        if (options.i) {
            params.i = *options.i - 1;
            params.j = *options.j - 1;
        }
        params.t = options.t;
    }
    if (options.probs) {
        params.probs = parse_probs(*options.probs, options.dim);
        if (!params.probs) {
            err << "error: --probs needs " << options.dim * options.dim << " comma-separated numbers\n";
            return kInputError;
        }
    }
    if (options.mixed_side == "A") {
        params.mixed_side = MixedSide::a;
    } else if (options.mixed_side == "B") {
        params.mixed_side = MixedSide::b;
    } else if (options.mixed_side == "none") {
        params.mixed_side = MixedSide::none;
    } else {
        err << "error: --mixed-side must be A, B or none\n";
        return kInputError;
    }

    Rng rng(options.seed);
    try {
        const GeneratedState gen = generate_state(family, options.dim, params, rng);
        if (options.out_path.empty()) {
            out << format_matrix_file(to_matrix_file(gen.state));
        } else {
            write_matrix_file(options.out_path, to_matrix_file(gen.state));
            for (const auto &line : gen.echo) {
                out << line << '\n';
            }
            out << "seed: " << options.seed << '\n';
            out << "written: " << options.out_path << '\n';
        }
    } catch (const InadmissibleError &e) {
        err << "error: " << e.what() << "; min_eigenvalue " << format_double(e.min_eigenvalue())
            << '\n';
        return kInadmissible;
    } catch (const InvalidStateError &e) {
        err << "error: " << e.what() << '\n';
        return kInadmissible;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}

int cmd_sweep(const SweepOptions &options, std::ostream &out, std::ostream &err) {
    SweepConfig config;
    try {
        std::ifstream in(options.config_path);
        if (!in) {
            throw ParseError("cannot open " + options.config_path);
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        config = parse_sweep_config(buf.str());
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    if (options.seed) {
        config.seed = *options.seed;
    }
    if (options.samples) {
        config.samples = *options.samples;
    }
    if (options.tol) {
        config.tol = *options.tol;
    }
    if (config.samples < 1 || !(config.tol > 0.0)) {
        err << "error: --samples must be >= 1 and --tol > 0\n";
        return kInputError;
    }

    const auto records = run_sweep(config);
    const auto summary = summarize(records);
    if (options.out_path.empty()) {
        write_sweep_csv(out, records);
        write_sweep_summary(err, summary);
    } else {
        std::ofstream csv(options.out_path, std::ios::binary);
        if (!csv) {
            err << "error: cannot write " << options.out_path << '\n';
            return kInputError;
        }
        write_sweep_csv(csv, records);
        write_sweep_summary(out, summary);
    }
    return kOk;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Classicality witness for bipartite qudit states"};
    app.require_subcommand(1);

    int gen_dim = 2;
    auto *generators = app.add_subcommand("generators", "Print the SU(n) generator basis");
    generators->add_option("--dim", gen_dim, "Local dimension n")->required();

    std::string witness_path;
    ClassifyOptions classify_opts;
    auto *witness = app.add_subcommand("witness", "Evaluate the witness on a state file");
    witness->add_option("input", witness_path, "Matrix file")->required();
    witness->add_option("--samples", classify_opts.samples, "Direction samples K")->capture_default_str();
    witness->add_option("--tol", classify_opts.tol, "Zero threshold")->capture_default_str();
    witness->add_option("--seed", classify_opts.seed, "Base seed")->capture_default_str();

    std::string decompose_path;
    auto *decompose_cmd = app.add_subcommand("decompose", "Print Bloch coefficients r, s, T");
    decompose_cmd->add_option("input", decompose_path, "Matrix file")->required();

    GenerateOptions gen_opts;
    auto *generate = app.add_subcommand("generate", "Write a state from one family");
    generate->add_option("--family", gen_opts.family,
                         "classical_aligned|classical_rotated|product|x_form|max_entangled|ginibre")
        ->required();
    generate->add_option("--dim", gen_opts.dim, "Local dimension n")->capture_default_str();
    generate->add_option("--i", gen_opts.i, "x_form left generator (1-based)");
    generate->add_option("--j", gen_opts.j, "x_form right generator (1-based)");
    generate->add_option("--t", gen_opts.t, "x_form coefficient");
    generate->add_option("--probs", gen_opts.probs, "Classical weights p_ij, row-major, comma-separated");
    generate->add_option("--mixed-side", gen_opts.mixed_side, "product: maximally mixed factor A|B|none")
        ->capture_default_str();
    generate->add_option("--seed", gen_opts.seed, "Seed")->capture_default_str();
    generate->add_option("--out", gen_opts.out_path, "Output file (default: stdout)");

    SweepOptions sweep_opts;
    auto *sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep and write CSV");
    sweep->add_option("--config", sweep_opts.config_path, "JSON sweep config")->required();
    sweep->add_option("--out", sweep_opts.out_path, "CSV output (default: stdout)");
    sweep->add_option("--seed", sweep_opts.seed, "Override base seed");
    sweep->add_option("--samples", sweep_opts.samples, "Override K");
    sweep->add_option("--tol", sweep_opts.tol, "Override zero threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kInputError;
    }

    if (generators->parsed()) {
        return cmd_generators(gen_dim, out, err);
    }
    if (witness->parsed()) {
        return cmd_witness(witness_path, classify_opts, out, err);
    }
    if (decompose_cmd->parsed()) {
        return cmd_decompose(decompose_path, out, err);
    }
    if (generate->parsed()) {
        return cmd_generate(gen_opts, out, err);
    }
    if (sweep->parsed()) {
        return cmd_sweep(sweep_opts, out, err);
    }
    return kInputError;
}

} // namespace qcw::cli
