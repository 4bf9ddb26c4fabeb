#include "qcwitness/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qcwitness/classicality_oracle.hpp"
#include "qcwitness/matrix_file.hpp"
#include "qcwitness/state_factory.hpp"
#include "qcwitness/su_basis.hpp"

namespace qcw {

using nlohmann::json;

namespace {

constexpr Family kFamilies[] = {Family::classical_aligned, Family::classical_rotated, Family::product,
                                Family::x_form,            Family::max_entangled,     Family::ginibre};

// FNV-1a over the raw bytes of the matrix entries.
std::uint64_t hash_matrix(const CMatrix &m, std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto *bytes = reinterpret_cast<const unsigned char *>(m.data());
    const auto len = static_cast<std::size_t>(m.size()) * sizeof(Complex);
    for (std::size_t k = 0; k < len; ++k) {
        h = (h ^ bytes[k]) * 0x100000001b3ULL;
    }
    return h;
}

std::string hex(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string format_probs(const RMatrix &p) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        out += (i ? ", [" : "[");
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            out += (j ? ", " : "") + format_double(p(i, j));
        }
        out += "]";
    }
    return out + "]";
}

bool is_classical_family(Family f) {
    return f == Family::classical_aligned || f == Family::classical_rotated || f == Family::x_form ||
           f == Family::product;
}

} // namespace

const char *to_string(Family family) {
    switch (family) {
    case Family::classical_aligned:
        return "classical_aligned";
    case Family::classical_rotated:
        return "classical_rotated";
    case Family::product:
        return "product";
    case Family::x_form:
        return "x_form";
    case Family::max_entangled:
        return "max_entangled";
    case Family::ginibre:
        return "ginibre";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (Family f : kFamilies) {
        if (name == to_string(f)) {
            return f;
        }
    }
    throw ParseError("unknown family \"" + std::string(name) + "\"");
}

GeneratedState generate_state(Family family, int dim, const GenerateParams &params, Rng &rng) {
    if (dim < 2) {
        throw DimensionError("dimension too small");
    }
    std::vector<std::string> echo;
    echo.push_back(std::string("family: ") + to_string(family));
    echo.push_back("dim: " + std::to_string(dim));

    switch (family) {
    case Family::classical_aligned:
    case Family::classical_rotated: {
        ClassicalSpec spec;
        spec.local_dim = dim;
        spec.probs = params.probs ? *params.probs : random_probabilities(dim, rng);
        if (family == Family::classical_rotated) {
            spec.basis_a = haar_unitary(dim, rng);
            spec.basis_b = haar_unitary(dim, rng);
        } else {
            spec.basis_a = CMatrix::Identity(dim, dim);
            spec.basis_b = CMatrix::Identity(dim, dim);
        }
        echo.push_back("probs: " + format_probs(spec.probs));
        echo.push_back("bases_hash: " + hex(hash_matrix(spec.basis_b, hash_matrix(spec.basis_a))));
        return {classical_state(spec), std::move(echo)};
    }
    case Family::product: {
        const DensityMatrix mixed = DensityMatrix::single(CMatrix::Identity(dim, dim) / double(dim));
        DensityMatrix a = params.mixed_side == MixedSide::a ? mixed : random_density(dim, rng);
        DensityMatrix b = params.mixed_side == MixedSide::b ? mixed : random_density(dim, rng);
        const char *side = params.mixed_side == MixedSide::a   ? "A"
                           : params.mixed_side == MixedSide::b ? "B"
                                                               : "none";
        echo.push_back(std::string("mixed_side: ") + side);
        return {product_state(a, b), std::move(echo)};
    }
    case Family::x_form: {
        const GeneratorBasis basis = build_generators(dim);
        const int m = static_cast<int>(basis.size());
        std::uniform_int_distribution<int> pick(0, m - 1);
        const int i = params.i ? *params.i : pick(rng);
        const int j = params.j ? *params.j : pick(rng);
        double t = 0.0;
        if (params.t) {
            t = *params.t;
        } else {
            std::uniform_real_distribution<double> uniform(admissible_t_min(basis, i, j),
                                                           admissible_t_max(basis, i, j));
            t = uniform(rng);
        }
        echo.push_back("i: " + std::to_string(i + 1));
        echo.push_back("j: " + std::to_string(j + 1));
        echo.push_back("t: " + format_double(t));
        return {x_form_state(basis, i, j, t), std::move(echo)};
    }
    case Family::max_entangled:
        return {max_entangled(dim), std::move(echo)};
    case Family::ginibre:
        return {random_bipartite_density(dim, rng), std::move(echo)};
    }
    throw Error("unhandled family");
}

SweepConfig parse_sweep_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed sweep config: ") + e.what());
    }
    try {
        SweepConfig cfg;
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.samples = doc.value("samples", cfg.samples);
        cfg.tol = doc.value("tol", cfg.tol);
        cfg.oracle_restarts = doc.value("oracle_restarts", cfg.oracle_restarts);
        cfg.oracle_tol = doc.value("oracle_tol", cfg.oracle_tol);
        cfg.oracle_max_dim = doc.value("oracle_max_dim", cfg.oracle_max_dim);
        if (!doc.contains("families") || !doc["families"].is_array()) {
            throw ParseError("sweep config needs a \"families\" array");
        }
        for (const auto &entry : doc["families"]) {
            FamilyRequest req{parse_family(entry.at("family").get<std::string>()),
                              entry.value("dim", 2), entry.at("count").get<int>()};
            if (req.dim < 2 || req.count < 0) {
                throw ParseError("family entries need dim >= 2 and count >= 0");
            }
            cfg.families.push_back(req);
        }
        if (cfg.samples < 1 || !(cfg.tol > 0.0) || cfg.oracle_restarts < 1) {
            throw ParseError("samples and oracle_restarts must be >= 1, tol > 0");
        }
        return cfg;
    } catch (const json::exception &e) {
        throw ParseError(std::string("invalid sweep config: ") + e.what());
    }
}

std::vector<SweepRecord> run_sweep(const SweepConfig &config, Exec exec) {
    struct Job {
        Family family;
        int dim;
        int index;
    };
    std::vector<Job> jobs;
    for (const auto &req : config.families) {
        for (int k = 0; k < req.count; ++k) {
            jobs.push_back({req.family, req.dim, k});
        }
    }

    std::vector<SweepRecord> records(jobs.size());
    const auto total = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (long row = 0; row < total; ++row) {
        const Job &job = jobs[static_cast<std::size_t>(row)];
        const Seed seed = derive_seed(config.seed, static_cast<std::uint64_t>(row));
        Rng rng = make_stream(seed, 0);

        GenerateParams params;
        params.mixed_side = (job.index % 2 == 0) ? MixedSide::b : MixedSide::a;
        const GeneratedState gen = generate_state(job.family, job.dim, params, rng);

        const GeneratorBasis basis = build_generators(job.dim);
        const WitnessReport report =
            classify(gen.state, basis, {config.samples, config.tol, derive_seed(seed, 1), Exec::serial});

        SweepRecord &rec = records[static_cast<std::size_t>(row)];
        char id[96];
        std::snprintf(id, sizeof id, "%s-n%d-%04d", to_string(job.family), job.dim, job.index);
        rec.state_id = id;
        rec.family = job.family;
        rec.dim = job.dim;
        rec.w_value = report.w_value;
        rec.verdict = report.verdict;
        rec.seed = seed;
        if (job.dim <= config.oracle_max_dim) {
            const OracleResult oracle = is_classical(
                gen.state, {config.oracle_tol, config.oracle_restarts, derive_seed(seed, 2), 2000,
                            Exec::serial});
            rec.oracle_classical = oracle.classical;
            rec.oracle_residual = oracle.residual;
        }
    }
    return records;
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRecord> &records) {
    out << "state_id,family,dim,w_value,verdict,oracle_classical,seed\n";
    for (const auto &rec : records) {
        out << rec.state_id << ',' << to_string(rec.family) << ',' << rec.dim << ','
            << format_double(rec.w_value) << ',' << to_string(rec.verdict) << ','
            << (rec.oracle_classical ? (*rec.oracle_classical ? "true" : "false") : "n/a") << ','
            << rec.seed << '\n';
    }
}

std::vector<FamilySummary> summarize(const std::vector<SweepRecord> &records) {
    std::vector<FamilySummary> out;
    for (const auto &rec : records) {
        auto it = std::find_if(out.begin(), out.end(), [&](const FamilySummary &s) {
            return s.family == rec.family && s.dim == rec.dim;
        });
        if (it == out.end()) {
            out.push_back({rec.family, rec.dim});
            it = std::prev(out.end());
        }
        ++it->count;
        const bool certified = rec.verdict == Verdict::certified_classical;
        it->certified += certified;
        if (rec.oracle_classical) {
            ++it->oracle_checked;
            it->oracle_true += *rec.oracle_classical;
            if (!*rec.oracle_classical && (certified || is_classical_family(rec.family))) {
                ++it->contradictions;
            }
        }
    }
    return out;
}

void write_sweep_summary(std::ostream &out, const std::vector<FamilySummary> &summary) {
    out << "family,dim,count,certified,certification_rate,oracle_true,oracle_checked,contradictions\n";
    for (const auto &s : summary) {
        out << to_string(s.family) << ',' << s.dim << ',' << s.count << ',' << s.certified << ','
            << format_double(s.rate()) << ',' << s.oracle_true << ',' << s.oracle_checked << ','
            << s.contradictions << '\n';
    }
}

} // namespace qcw
