#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <random>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcwitness/bloch.hpp"
#include "qcwitness/commands.hpp"
#include "qcwitness/matrix_file.hpp"
#include "qcwitness/state_factory.hpp"
#include "qcwitness/sweep.hpp"

using namespace qcw;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("qcw_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string &name) const { return (path / name).string(); }
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qcwitness");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream(path, std::ios::binary) << text;
}

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool contains(const std::string &hay, const std::string &needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("matrix file round trip is exact") {
    Rng rng(3);
    for (int n = 2; n <= 4; ++n) {
        const auto rho = random_bipartite_density(n, rng);
        const MatrixFile back = parse_matrix_file(format_matrix_file(to_matrix_file(rho)));
        CHECK(back.kind == StateKind::bipartite);
        CHECK(back.local_dim == n);
        CHECK(back.matrix == rho.matrix());
    }
    const auto single = random_density(3, rng);
    const MatrixFile back = parse_matrix_file(format_matrix_file(to_matrix_file(single)));
    CHECK(back.kind == StateKind::single);
    CHECK(back.matrix == single.matrix());
}

TEST_CASE("matrix file parse errors") {
    CHECK_THROWS_AS(parse_matrix_file("{not json"), ParseError);
    CHECK_THROWS_AS(parse_matrix_file(R"({"kind":"triple","local_dim":2,"re":[],"im":[]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_file(R"({"kind":"single","local_dim":2,"re":[[1,0],[0,0]]})"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_matrix_file(R"({"kind":"single","local_dim":2,"re":[[1,0],[0]],"im":[[0,0],[0,0]]})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_matrix_file(R"({"kind":"single","local_dim":2,"re":[[1,"x"],[0,0]],"im":[[0,0],[0,0]]})"),
        ParseError);
}

TEST_CASE("generators subcommand") {
    auto r2 = run({"generators", "--dim", "2"});
    CHECK(r2.code == 0);
    CHECK(contains(r2.out, "count: 3"));
    CHECK(contains(r2.out, "orthogonality: OK"));
    auto r3 = run({"generators", "--dim", "3"});
    CHECK(r3.code == 0);
    CHECK(contains(r3.out, "count: 8"));
    CHECK(contains(r3.out, "generator 8 diag(2)"));
    auto r1 = run({"generators", "--dim", "1"});
    CHECK(r1.code == 2);
    CHECK(contains(r1.err, "dimension too small"));
}

TEST_CASE("witness subcommand") {
    TempDir dir;
    const auto bell = dir.file("bell.json");
    write_matrix_file(bell, to_matrix_file(max_entangled(2)));
    auto r = run({"witness", bell});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\nW: 3\n"));
    CHECK(contains(r.out, "verdict: INCONCLUSIVE"));
    CHECK(contains(r.out, "top_expectations:\n  (1,1) 1\n  (2,2) -1\n  (3,3) 1\n"));

    const auto mixed = dir.file("mixed.json");
    write_matrix_file(mixed, to_matrix_file(maximally_mixed(2)));
    auto m = run({"witness", mixed, "--samples", "4", "--seed", "11"});
    CHECK(m.code == 0);
    CHECK(contains(m.out, "\nW: 0\n"));
    CHECK(contains(m.out, "verdict: CERTIFIED_CLASSICAL"));
    CHECK(contains(m.out, "identified_form: PRODUCT_LIKE"));
    CHECK(contains(m.out, "sample 4 W:"));

    MatrixFile bad = to_matrix_file(maximally_mixed(2));
    bad.matrix *= 0.9;
    const auto bad_path = dir.file("bad.json");
    write_matrix_file(bad_path, bad);
    auto b = run({"witness", bad_path});
    CHECK(b.code == 3);
    CHECK(contains(b.err, "trace: 0.90000000000000002 VIOLATION"));

    write_text(dir.file("garbage.json"), "{\"kind\": 4");
    CHECK(run({"witness", dir.file("garbage.json")}).code == 2);
    CHECK(run({"witness", dir.file("missing.json")}).code == 2);
    CHECK(run({"witness", bell, "--samples", "0"}).code == 2);
}

TEST_CASE("decompose subcommand") {
    TempDir dir;
    const auto bell = dir.file("bell.json");
    write_matrix_file(bell, to_matrix_file(max_entangled(2)));
    auto r = run({"decompose", bell});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "T:\n  1 0 0\n  0 -1 0\n  0 0 1\n"));

    Rng rng(5);
    const auto prod = dir.file("prod.json");
    write_matrix_file(prod, to_matrix_file(product_state(random_density(2, rng), random_density(2, rng))));
    auto p = run({"decompose", prod});
    CHECK(p.code == 0);
    const auto pos = p.out.find("product_residual: ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(p.out.substr(pos + 18)) < 1e-10);
    const auto rt = p.out.find("round_trip_residual: ");
    CHECK(std::stod(p.out.substr(rt + 21)) < 1e-12);

    const auto mixed = dir.file("mixed.json");
    write_matrix_file(mixed, to_matrix_file(maximally_mixed(3)));
    auto m = run({"decompose", mixed});
    CHECK(contains(m.out, "r_norm: 0\n"));
    CHECK(contains(m.out, "s_norm: 0\n"));
    CHECK(contains(m.out, "T_norm: 0\n"));
}

TEST_CASE("generate subcommand") {
    TempDir dir;
    const auto xf = dir.file("x.json");
    auto g = run({"generate", "--family", "x_form", "--dim", "2", "--i", "3", "--j", "3", "--t", "1.0",
                  "--out", xf});
    CHECK(g.code == 0);
    CHECK(contains(g.out, "t: 1\n"));
    auto w = run({"witness", xf});
    CHECK(contains(w.out, "verdict: CERTIFIED_CLASSICAL"));
    CHECK(contains(w.out, "identified_form: SINGLE_CORRELATION(3,3)"));

    auto bad = run({"generate", "--family", "x_form", "--dim", "2", "--i", "3", "--j", "3", "--t", "2.0",
                    "--out", dir.file("bad.json")});
    CHECK(bad.code == 4);
    CHECK(contains(bad.err, "min_eigenvalue -0.25"));

    const auto me = dir.file("me.json");
    CHECK(run({"generate", "--family", "max_entangled", "--dim", "3", "--out", me}).code == 0);
    const auto rho = to_state(read_matrix_file(me));
    CHECK((rho.matrix() * rho.matrix()).trace().real() == doctest::Approx(1.0));

    auto cl = run({"generate", "--family", "classical_rotated", "--dim", "2", "--probs",
                   "0.1,0.2,0.3,0.4", "--seed", "3", "--out", dir.file("c.json")});
    CHECK(cl.code == 0);
    CHECK(contains(cl.out, "probs: [[0.10000000000000001, 0.20000000000000001]"));
    CHECK(contains(cl.out, "bases_hash: "));

    CHECK(run({"generate", "--family", "nonsense"}).code == 2);
    CHECK(run({"generate", "--family", "classical_aligned", "--probs", "0.5,0.5"}).code == 2);
    CHECK(run({"generate", "--family", "x_form", "--i", "9", "--j", "1"}).code == 2);

    // Every generated file survives a write/read cycle bit-for-bit.
    const auto gin = dir.file("g.json");
    CHECK(run({"generate", "--family", "ginibre", "--dim", "3", "--seed", "8", "--out", gin}).code == 0);
    const MatrixFile once = read_matrix_file(gin);
    const auto again = dir.file("g2.json");
    write_matrix_file(again, once);
    CHECK(read_text(gin) == read_text(again));
    CHECK(run({"decompose", gin}).code == 0);

    // Without --out the file goes to stdout.
    auto stdout_gen = run({"generate", "--family", "max_entangled", "--dim", "2"});
    CHECK(parse_matrix_file(stdout_gen.out).matrix == max_entangled(2).matrix());
}

TEST_CASE("sweep subcommand") {
    TempDir dir;
    const auto cfg = dir.file("cfg.json");
    write_text(cfg, R"({"seed": 5, "oracle_restarts": 6, "families": [
        {"family": "x_form", "dim": 2, "count": 5},
        {"family": "ginibre", "dim": 2, "count": 5},
        {"family": "ginibre", "dim": 4, "count": 2}]})");
    const auto out1 = dir.file("a.csv");
    auto r = run({"sweep", "--config", cfg, "--out", out1});
    CHECK(r.code == 0);
    const std::string csv = read_text(out1);
    CHECK(csv.rfind("state_id,family,dim,w_value,verdict,oracle_classical,seed\n", 0) == 0);
    CHECK(contains(csv, "x_form-n2-0000,x_form,2,"));
    CHECK(contains(csv, ",n/a,")); // dim 4 rows skip the oracle
    CHECK(contains(r.out, "x_form,2,5,5,1,5,5,0"));
    CHECK(contains(r.out, "ginibre,2,5,0,0,"));

    auto to_stdout = run({"sweep", "--config", cfg});
    CHECK(to_stdout.out == csv);
    CHECK(contains(to_stdout.err, "certification_rate"));

    auto reseeded = run({"sweep", "--config", cfg, "--seed", "6"});
    CHECK(reseeded.out != csv);

    write_text(dir.file("broken.json"), R"({"families": [{"family": "bogus", "count": 1}]})");
    CHECK(run({"sweep", "--config", dir.file("broken.json")}).code == 2);
    write_text(dir.file("broken2.json"), "[1,2");
    CHECK(run({"sweep", "--config", dir.file("broken2.json")}).code == 2);
    CHECK(run({"sweep", "--config", dir.file("nope.json")}).code == 2);
}

TEST_CASE("argument errors map to exit code 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"generators"}).code == 2);
    CHECK(run({"generators", "--dim", "two"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("installed binary honours the exit-code contract") {
    TempDir dir;
    const std::string exe = QCW_CLI_PATH;
    auto status = [](const std::string &cmd) {
        const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(raw);
    };
    CHECK(status(exe + " generators --dim 2") == 0);
    CHECK(status(exe + " generators --dim 1") == 2);
    const auto bad = dir.file("bad.json");
    CHECK(status(exe + " generate --family x_form --dim 2 --i 3 --j 3 --t 2.0 --out " + bad) == 4);
    const auto good = dir.file("good.json");
    CHECK(status(exe + " generate --family x_form --dim 2 --i 3 --j 3 --t 1.0 --out " + good) == 0);
    CHECK(status(exe + " witness " + good) == 0);
}
