#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Spawns the installed binary; stderr is dropped so diagnostics from
// deliberate failure cases stay out of the test log.
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("FORMLAB_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "FORMLAB_BIN must point at the cli binary");
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string golden_path() {
    const char* p = std::getenv("FORMLAB_GOLDEN");
    REQUIRE_MESSAGE(p != nullptr, "FORMLAB_GOLDEN must point at the golden table");
    return p;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string temp_path(const std::string& tag) {
    return "/tmp/formlab_cli_" + std::to_string(getpid()) + "_" + tag;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("verify writes parseable passing reports") {
    const std::string path = temp_path("verify.json");
    const RunResult r = run_cli("verify sphere:r=1 --grid 9x9 --tol 1e-7 --json " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);

    const json rows = json::parse(slurp(path));
    REQUIRE(rows.is_array());
    REQUIRE(rows.size() >= 3);
    for (const json& row : rows) {
        CHECK(row.at("surface") == "sphere:r=1");
        CHECK(row.at("pass") == true);
        CHECK(row.at("max_error").get<double>() < row.at("tol").get<double>());
    }
    std::remove(path.c_str());
}

TEST_CASE("detect reports the expected spectra") {
    const std::string path = temp_path("detect.json");
    const RunResult sphere = run_cli("detect sphere:r=1 --json " + path);
    CHECK(sphere.exit_code == 0);
    const json rep = json::parse(slurp(path));
    CHECK(rep.at("k") == 1);
    CHECK(rep.at("verdict") == "type1");
    CHECK(rep.at("null_type") == false);
    CHECK(rep.at("translation_identifiable") == true);
    REQUIRE(rep.at("eigenvalues").size() == 1);
    CHECK(std::abs(rep["eigenvalues"][0].at("re").get<double>() - 2.0) < 1e-5);
    CHECK(std::abs(rep["eigenvalues"][0].at("im").get<double>()) < 1e-6);
    std::remove(path.c_str());

    const RunResult par =
        run_cli("detect 'parallel:base=catenoid:a=1,mu=0.5' --kmax 4 --json " + path);
    CHECK(par.exit_code == 0);
    const json prep = json::parse(slurp(path));
    CHECK(prep.at("k") == 2);
    CHECK(prep.at("verdict") == "null_type2_parallel_minimal");
    REQUIRE(prep.at("eigenvalues").size() == 2);
    CHECK(std::abs(prep["eigenvalues"][0].at("re").get<double>()) < 1e-5);
    CHECK(std::abs(prep["eigenvalues"][1].at("re").get<double>() - 2.0) < 1e-5);
    std::remove(path.c_str());

    CHECK(run_cli("detect torus:a=2 --expect not_finite_type_up_to_kmax").exit_code == 0);
    CHECK(run_cli("detect sphere:r=1 --expect null_type1").exit_code == 1);
}

TEST_CASE("exit codes follow the contract") {
    CHECK(run_cli("detect sphere:r=banana").exit_code == 64);
    CHECK(run_cli("frobnicate sphere:r=1").exit_code == 64);
    CHECK(run_cli("detect sphere:r=1 --kmax 9").exit_code == 64);
    CHECK(run_cli("verify sphere:r=1 --grid 2x2").exit_code == 64);
    CHECK(run_cli("detect 'parallel:base=sphere:r=1,mu=1'").exit_code == 2);
    CHECK(run_cli("verify sphere:r=1 --u-range 3:4 --grid 5x5").exit_code == 2);
    CHECK(run_cli("coordtype torus:a=2").exit_code == 1);
    CHECK(run_cli("coordtype torus:a=2 --expect fail").exit_code == 0);
    CHECK(run_cli("coordtype sphere:r=1 --expect pass").exit_code == 0);
}

TEST_CASE("classify emits the combined report") {
    const std::string path = temp_path("classify.json");
    const RunResult r = run_cli("classify catenoid:a=1 --json " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("label: minimal_null1") != std::string::npos);
    const json rep = json::parse(slurp(path));
    CHECK(rep.at("label") == "minimal_null1");
    CHECK(rep.at("type").at("verdict") == "null_type1");
    CHECK(rep.at("coordinate").at("pass") == true);
    CHECK(std::abs(rep.at("radii").at("mean").get<double>()) < 1e-9);
    std::remove(path.c_str());

    CHECK(run_cli("classify torus:a=2 --expect infinite_type_suspected").exit_code == 0);
    CHECK(run_cli("classify torus:a=2 --expect sphere_type1").exit_code == 1);
}

TEST_CASE("the table matches its golden file deterministically") {
    const std::string golden = golden_path();
    const RunResult match = run_cli("table " + golden);
    CHECK(match.exit_code == 0);
    CHECK(match.out == slurp(golden));

    const RunResult again = run_cli("table");
    CHECK(again.exit_code == 0);
    CHECK(again.out == match.out);

    // a single-row CLI csv reproduces the corresponding golden line
    const std::string path = temp_path("row.csv");
    CHECK(run_cli("detect sphere:r=1 --csv " + path).exit_code == 0);
    const std::string row = slurp(path);
    CHECK(match.out.find(row.substr(row.find('\n') + 1)) != std::string::npos);
    std::remove(path.c_str());

    const std::string corrupted = temp_path("golden.csv");
    std::string text = slurp(golden);
    text.replace(text.find("sphere_type1"), 12, "sphere_typeX");
    std::ofstream(corrupted, std::ios::binary) << text;
    CHECK(run_cli("table " + corrupted).exit_code == 1);
    std::remove(corrupted.c_str());
}

} // TEST_SUITE
