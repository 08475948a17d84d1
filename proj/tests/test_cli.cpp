#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pnf/lie.hpp"
#include "pnf/multivec.hpp"

using namespace pnf;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args, int tag) {
    std::string out_path = std::string("/tmp/pnf_cli_out_") + std::to_string(tag) + ".txt";
    std::string cmd = std::string(PNF_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    std::remove(out_path.c_str());
    return r;
}

std::string problem(const std::string& name) {
    return std::string(PNF_PROBLEM_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("selftest passes") {
    RunResult r = run_cli("selftest", 0);
    CHECK(r.exit_code == 0);
}

TEST_CASE("sl3 resonance matches the checked-in golden file") {
    RunResult r = run_cli("resonance " + problem("sl3_resonance.json") + " --format machine", 1);
    CHECK(r.exit_code == 0);
    CHECK(r.out == slurp(std::string(PNF_GOLDEN_DIR) + "/sl3_resonance.json"));
}

TEST_CASE("machine output is byte-deterministic across runs and thread counts") {
    RunResult a = run_cli("omega " + problem("sl2_omega.json") + " --format machine", 2);
    RunResult b = run_cli("omega " + problem("sl2_omega.json") + " --format machine", 3);
    RunResult c =
        run_cli("omega " + problem("sl2_omega.json") + " --format machine --threads 4", 4);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);

    RunResult d = run_cli("birkhoff " + problem("sl2_birkhoff.json") + " --format machine", 5);
    RunResult e = run_cli("birkhoff " + problem("sl2_birkhoff.json") + " --format machine", 6);
    CHECK(d.exit_code == 0);
    CHECK(d.out == e.out);
    CHECK(d.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("resonant linearize exits 1 with a witness monomial") {
    RunResult r = run_cli(
        "linearize " + problem("sl2_linearize_resonant.json") + " --format machine", 7);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("\"code\": \"resonance\"") != std::string::npos);
    CHECK(r.out.find("monomial") != std::string::npos);
}

TEST_CASE("malformed input exits 2") {
    RunResult r = run_cli("resonance " + problem("malformed.json") + " --format machine", 8);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("\"kind\": \"input\"") != std::string::npos);

    RunResult missing = run_cli("omega /nonexistent.json --format machine", 9);
    CHECK(missing.exit_code == 2);
}

TEST_CASE("siegel run") {
    RunResult r = run_cli("siegel " + problem("siegel.json") + " --format machine", 10);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"consistent\": true") != std::string::npos);
}

TEST_CASE("lie-validate") {
    RunResult r = run_cli("lie-validate " + problem("sl2_validate.json") + " --format machine",
                          11);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);

    // a table with broken antisymmetry fails with exit 1 and a witness entry
    RunResult bad =
        run_cli("lie-validate " + problem("broken_algebra.json") + " --format machine", 12);
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("\"pass\": false") != std::string::npos);
}

TEST_CASE("full linearize run through the CLI on a generated problem") {
    // Build a valid homogeneous pair with the library, print it into a
    // problem file, and drive the binary end to end.
    ProblemSpace space{0, lie_sl2(), 6, Field::Q};
    MultiVec pi = product_poisson(space);
    int n = 3, N = 6;
    VarNames names = space.names();
    Poly h1 = Poly::variable(n, 2).scaled(Scalar(Rational(1, 8)));
    Poly g = parse_poly("1*z1^2*z2 - 1/2*z3^3", names);
    MultiVec linear = MultiVec::euler(n) + hamiltonian_vf(h1, pi, N);
    MultiVec X = flow_pushforward(linear, g, pi, N);

    std::string path = "/tmp/pnf_cli_linearize_problem.json";
    {
        std::ofstream out(path);
        out << "{\n  \"field\": \"Q\",\n  \"l\": 0,\n  \"algebra\": \"sl2\",\n  \"N\": 6,\n";
        out << "  \"vector_field\": [";
        for (int i = 0; i < n; ++i) {
            if (i) out << ", ";
            out << "\"" << X.component({i}).str(names) << "\"";
        }
        out << "]\n}\n";
    }
    RunResult block = run_cli("linearize " + path + " --format machine", 12);
    CHECK(block.exit_code == 0);
    CHECK(block.out.find("\"pass\": true") != std::string::npos);
    RunResult degree =
        run_cli("linearize " + path + " --format machine --schedule degree", 13);
    CHECK(degree.exit_code == 0);
    CHECK(degree.out.find("\"pass\": true") != std::string::npos);
    // --degree override truncates the run
    RunResult lower = run_cli("linearize " + path + " --format machine --degree 4", 14);
    CHECK(lower.exit_code == 0);
    std::remove(path.c_str());
}
