#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bispec/cli.hpp"

using namespace bispec;
using namespace bispec::cli;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("bispec-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream(p) << content;
        return p.string();
    }
};

int run_args(std::vector<std::string> args, std::string* out_text = nullptr,
             std::string* err_text = nullptr) {
    std::vector<const char*> argv = {"bispec"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int rc = run_main(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return rc;
}

}  // namespace

TEST_CASE("table emits csv with the expected row") {
    std::string out;
    CHECK(run_args({"table", "--family", "gegenbauer-default", "--n-max", "5", "--out", "csv"},
                   &out) == 0);
    CHECK(out.find("n,lambda,nu,u\n") == 0);
    CHECK(out.find("1,") != std::string::npos);
    // u_1 = 3/5 at a = 3, b = 1
    CHECK(out.find(",3/5\n") != std::string::npos);
    // 6 data rows + header
    CHECK(std::count(out.begin(), out.end(), '\n') == 7);
}

TEST_CASE("table json and determinism") {
    std::string a, b;
    CHECK(run_args({"table", "--family", "hermite", "--n-max", "8"}, &a) == 0);
    CHECK(run_args({"table", "--family", "hermite", "--n-max", "8"}, &b) == 0);
    CHECK(a == b);  // byte-identical across runs
    const json j = json::parse(a);
    CHECK(j["rows"].size() == 9);
    CHECK(j["rows"][2]["lambda"] == "-5/2");
    CHECK(j["rows"][2]["u"] == "2");
    CHECK(j["rows"][0]["u"].is_null());
}

TEST_CASE("poly command emits the polynomial JSON") {
    std::string out;
    CHECK(run_args({"poly", "--family", "hermite", "--degree", "4"}, &out) == 0);
    const json j = json::parse(out);
    // x^4 - 6x^2 + 3 ascending: [[0,"3"],[2,"-6"],[4,"1"]]
    CHECK(j["terms"] == json::parse(R"([[0,"3"],[2,"-6"],[4,"1"]])"));
    std::string out2;
    CHECK(run_args({"poly", "--family", "hermite", "--degree", "4", "--method", "recurrence"},
                   &out2) == 0);
    CHECK(out == out2);
}

TEST_CASE("family spec file loading and defaults") {
    TempDir tmp;
    const std::string spec = tmp.file(
        "fam.json", R"({"kind": "GeneralizedLittleQJacobi", "q": "1/2", "a": "2", "b": "1"})");
    std::string out;
    CHECK(run_args({"table", "--family", spec, "--n-max", "1"}, &out) == 0);
    const json j = json::parse(out);
    CHECK(j["family"]["rho"] == "-2");  // default gauge filled in
    CHECK(j["family"]["eps0"] == "-1");
}

TEST_CASE("verify all suites on the hermite preset") {
    std::string out, err;
    CHECK(run_args({"verify", "--suite", "all", "--family", "hermite", "--n-max", "12"}, &out,
                   &err) == 0);
    const json j = json::parse(out);
    CHECK(j["passed"] == true);
    CHECK(j["suites"].contains("eigen"));
    CHECK(j["suites"].contains("orthogonality"));
    CHECK(j["suites"].contains("ns"));
    CHECK(j["suites"].contains("symmetry"));
    CHECK(j["suites"].contains("realization"));
    CHECK(j["suites"].contains("algebra"));
    CHECK(err.find("ms") != std::string::npos);  // timing goes to stderr only
    CHECK(out.find("ms") == std::string::npos);
}

TEST_CASE("verify single suite exit codes") {
    CHECK(run_args({"verify", "--suite", "eigen", "--family", "qjacobi-default", "--n-max",
                    "15"}) == 0);
    CHECK(run_args({"verify", "--suite", "nosuchsuite", "--family", "hermite"}) == 2);
}

TEST_CASE("verify the q-laguerre preset skips the realization suite") {
    std::string out;
    CHECK(run_args({"verify", "--suite", "realization", "--family", "qlaguerre-default",
                    "--n-max", "10"},
                   &out) == 0);
    const json j = json::parse(out);
    CHECK(j["suites"]["realization"][0]["skipped"] == true);
}

TEST_CASE("realize check and apply") {
    CHECK(run_args({"realize", "--family", "gegenbauer-default", "--check", "--n-max", "25"}) ==
          0);
    TempDir tmp;
    const std::string poly = tmp.file("p.json", R"({"terms": [[0, "-1"], [2, "1"]]})");
    std::string out;
    CHECK(run_args({"realize", "--family", "hermite", "--apply", poly}, &out) == 0);
    // L (x^2 - 1) = lambda_2 (x^2 - 1) = -5/2 x^2 + 5/2
    const json j = json::parse(out);
    CHECK(j["terms"] == json::parse(R"([[0,"5/2"],[2,"-5/2"]])"));
    // unsupported family
    std::string err;
    CHECK(run_args({"realize", "--family", "qlaguerre-default", "--apply", poly}, &out, &err) ==
          2);
    CHECK(err.find("realization") != std::string::npos);
}

TEST_CASE("algebra verify and fit") {
    std::string out;
    CHECK(run_args({"algebra", "verify", "--family", "qjacobi-default", "--n-max", "20"}, &out) ==
          0);
    CHECK(run_args({"algebra", "fit", "--family", "hermite", "--template", "sl2"}, &out) == 0);
    const json j = json::parse(out);
    CHECK(j["fit"]["consistent"] == true);
    CHECK(j["fit"]["coefficients"]["l"] == "8");
    CHECK(j["fit"]["coefficients"]["y"] == "4");
    // wrong template for the family: inconsistent, exit 1
    CHECK(run_args({"algebra", "fit", "--family", "qlaguerre-default", "--template", "qjacobi"}) ==
          1);
}

TEST_CASE("classify command") {
    TempDir tmp;
    std::ostringstream lambda, nu;
    lambda << "[";
    nu << "[";
    for (long n = 0; n < 20; ++n) {
        const auto [l, v] = lambda_nu(preset("gegenbauer-default").value(), n);
        lambda << (n ? "," : "") << '"' << l.str() << '"';
        nu << (n ? "," : "") << '"' << v.str() << '"';
    }
    const std::string seq = tmp.file(
        "seq.json", "{\"lambda\": " + lambda.str() + "], \"nu\": " + nu.str() + "]}");
    std::string out;
    CHECK(run_args({"classify", "--input", seq}, &out) == 0);
    const json j = json::parse(out);
    CHECK(j["class"] == "JacobiClass");
    CHECK(j["compatible"] == true);
}

TEST_CASE("gauge command") {
    std::string out;
    CHECK(run_args({"gauge", "--family", "hermite", "--n-max", "4", "--eta1", "5"}, &out) == 0);
    json j = json::parse(out);
    CHECK(j["admissible"] == true);
    CHECK(j["rows"][0]["lambda"] == "9/2");  // -1/2 + 5
    // degenerate gauge: xi2 = -1 sends all odd eigenvalues to eta1
    CHECK(run_args({"gauge", "--family", "hermite", "--n-max", "4", "--xi2", "-1"}, &out) == 1);
    CHECK(json::parse(out)["admissible"] == false);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_args({"table", "--family", "/nonexistent/f.json"}) == 2);
    CHECK(run_args({"nosuchcommand"}) == 2);
    CHECK(run_args({"table"}) == 2);  // --family required
    CHECK(run_args({"poly", "--family", "hermite", "--degree", "3", "--method", "wrong"}) == 2);
    CHECK(run_args({"table", "--family", "hermite", "--n-max", "0"}) == 2);
    CHECK(run_args({"table", "--family", "hermite", "--out", "xml"}) == 2);
    TempDir tmp;
    const std::string bad = tmp.file("bad.json", "{not json");
    CHECK(run_args({"table", "--family", bad}) == 2);
    const std::string badq = tmp.file(
        "badq.json", R"({"kind": "GeneralizedLittleQJacobi", "q": "3/2", "a": "1", "b": "1"})");
    CHECK(run_args({"table", "--family", badq}) == 2);
}

TEST_CASE("output file writing") {
    TempDir tmp;
    const std::string path = (tmp.path / "out.json").string();
    std::string out;
    CHECK(run_args({"poly", "--family", "hermite", "--degree", "2", "--output", path}, &out) == 0);
    CHECK(out.empty());
    std::ifstream in(path);
    json j;
    in >> j;
    CHECK(j["terms"] == json::parse(R"([[0,"-1"],[2,"1"]])"));
}

TEST_CASE("rational strings round-trip through table output") {
    std::string out;
    CHECK(run_args({"table", "--family", "qjacobi-default", "--n-max", "12", "--out", "csv"},
                   &out) == 0);
    std::istringstream lines(out);
    std::string line;
    std::getline(lines, line);  // header
    long n = 0;
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        CHECK(cell == std::to_string(n));
        std::getline(cells, cell, ',');
        CHECK(Rational::from_string(cell) == lambda_of(preset("qjacobi-default").value(), n));
        ++n;
    }
    CHECK(n == 13);
}

TEST_CASE("the installed binary behaves like the in-process runner") {
    const std::string bin = BISPEC_CLI_BINARY;
    CHECK(std::system((bin + " table --family hermite --n-max 3 > /dev/null").c_str()) == 0);
    const int bad = std::system((bin + " table --family /nope.json 2> /dev/null").c_str());
    CHECK(WEXITSTATUS(bad) == 2);
    const int help = std::system((bin + " --help > /dev/null").c_str());
    CHECK(WEXITSTATUS(help) == 0);
}
