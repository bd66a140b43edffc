#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spps/commands.hpp"
#include "support.hpp"

using namespace spps;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / ("spps_unit_" + name);
    std::ofstream(p) << content;
    return p;
}

}  // namespace

TEST_CASE("solve prints a header and one row per eigenvalue") {
    std::ostringstream out, err;
    Overrides o;
    o.max_eigenvalues = 2;
    CHECK(command_solve(test_support::fixture("harmonic"), o, out, err) == exit_code::success);
    const std::string s = out.str();
    CHECK(s.rfind("# n_powers=50 mesh=5000 runtime_s=", 0) == 0);
    CHECK(s.find("n\tre\tim\tresidual\tcenter_re\tcenter_im\n") != std::string::npos);
    CHECK(s.find("\n1\t3.99999999") != std::string::npos);
}

TEST_CASE("verify reports mismatches with exit code 1") {
    std::ostringstream out, err;
    const auto good = scratch("good.ref", "0 1 0 1e-9\n1 4 0 1e-9\n");
    CHECK(command_verify(test_support::fixture("harmonic"), good, {}, out, err) == exit_code::success);
    const auto bad = scratch("bad.ref", "0 1 0 1e-9\n1 4.5 0 1e-9\n");
    std::ostringstream out2;
    CHECK(command_verify(test_support::fixture("harmonic"), bad, {}, out2, err) == exit_code::failure);
    CHECK(out2.str().find("FAIL") != std::string::npos);
}

TEST_CASE("count and powers") {
    std::ostringstream out, err;
    CHECK(command_count(test_support::fixture("harmonic"), {}, 0.0, 10.0, 1024, out, err) == exit_code::success);
    CHECK(out.str() == "3\n");
    std::ostringstream p;
    CHECK(command_powers(test_support::fixture("trivial"), {}, 2, 1.0, p, err) == exit_code::success);
    CHECK(p.str().find("x_tilde\t0.5") != std::string::npos);
}

TEST_CASE("landscape writes a sidecar with --out") {
    const fs::path file = fs::temp_directory_path() / "spps_unit_land.tsv";
    Overrides o;
    o.out = file;
    std::ostringstream out, err;
    CHECK(command_landscape(test_support::fixture("harmonic"), o, 4.0, 1.0, 16, out, err) == exit_code::success);
    std::ifstream meta(file.string() + ".meta");
    std::string line;
    std::getline(meta, line);
    CHECK(line.find("grid=16") != std::string::npos);
    CHECK(line.find("exceeds_trust=0") != std::string::npos);
    std::ifstream grid(file);
    int rows = 0;
    while (std::getline(grid, line)) rows += line.empty() || line[0] == '#' ? 0 : 1;
    CHECK(rows == 16);
}

TEST_CASE("exit codes for bad input and solver failures") {
    std::ostringstream out, err;
    CHECK(command_solve("/nonexistent.spps", {}, out, err) == exit_code::input_error);
    Overrides zero;
    zero.n_powers = 0;
    CHECK(command_solve(test_support::fixture("harmonic"), zero, out, err) == exit_code::input_error);

    std::ifstream in(test_support::fixture("trivial"));
    std::string text((std::istreambuf_iterator<char>(in)), {});
    text.replace(text.find("f = \"1\""), 7, "f = \"x\"");
    text.replace(text.find("pf_prime = \"0\""), 14, "pf_prime = \"1\"");
    const auto vanishing = scratch("vanishing.spps", text);
    std::ostringstream e2;
    CHECK(command_solve(vanishing, {}, out, e2) == exit_code::solver_error);
    CHECK(e2.str().rfind("solver error:", 0) == 0);
}
