#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "riesz/io.hpp"
#include "riesz/operators.hpp"

using namespace riesz;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    const fs::path d = fs::temp_directory_path() / "riesz_cli_tests";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"bogus"}).code == cli::kExitUsage);
    CHECK(run({"constants"}).code == cli::kExitUsage);
    CHECK(run({"constants", "--p", "1"}).code == cli::kExitUsage);
    CHECK(run({"constants", "--p", "abc"}).code == cli::kExitUsage);
    CHECK(run({"verify-embedding", "--p", "1", "--trials", "2"}).code == cli::kExitUsage);
    CHECK(run({"norm-search", "--p", "4", "--alpha", "1:1,0", "--group", "4,4"}).code == cli::kExitUsage);
    CHECK(run({"constants", "--p", "2", "--format", "csv"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("constants") {
    const Run r2 = run({"constants", "--p", "2"});
    REQUIRE(r2.code == 0);
    CHECK(nlohmann::json::parse(r2.out)["p_star_minus_one"].get<double>() == 1.0);
    const Run r4 = run({"constants", "--p", "4"});
    const auto j = nlohmann::json::parse(r4.out);
    CHECK(j["p_star_minus_one"].get<double>() == 3.0);
    CHECK(std::abs(j["beta2"].get<double>() - 0.0090758899327819107121) <= 1e-12);
    CHECK(std::abs(j["q"].get<double>() - 4.0 / 3.0) <= 1e-15);
}

TEST_CASE("apply: all-ones, zero coefficients, binary round trip, shape mismatch") {
    const fs::path d = scratch();
    const GroupSpec g = make_group({6, 4});
    const LatticeFunction f = random_function(g, 3, true);
    io::write_function(d / "f.bin", f, io::Format::Binary);

    REQUIRE(run({"apply", "--in", (d / "f.bin").string(), "--out", (d / "ones.json").string()}).code == 0);
    CHECK(max_abs_diff(io::read_function(d / "ones.json"), Complex(-1.0) * f) <= 1e-12);
    CHECK(fs::exists(d / "ones.json.manifest.json"));

    REQUIRE(run({"apply", "--group", "6,4", "--alpha", "0,0", "--in", (d / "f.bin").string(), "--out",
                 (d / "zero.bin").string(), "--format", "bin"})
                .code == 0);
    CHECK(max_abs_diff(io::read_function(d / "zero.bin"), LatticeFunction(g)) == 0.0);

    // binary output read back and re-applied is bit-identical to the in-memory result
    REQUIRE(run({"apply", "--alpha", "0:1,-0.5", "--in", (d / "f.bin").string(), "--out", (d / "a.bin").string(),
                 "--format", "bin"})
                .code == 0);
    const LatticeFunction expect = apply_second_riesz(f, CoefficientVector({Complex(0.0, 1.0), -0.5}));
    CHECK(max_abs_diff(io::read_function(d / "a.bin"), expect) == 0.0);

    CHECK(run({"apply", "--group", "4,4", "--in", (d / "f.bin").string(), "--out", (d / "x.json").string()}).code ==
          cli::kExitUsage);
    std::ofstream(d / "junk.json") << "{not json";
    CHECK(run({"apply", "--in", (d / "junk.json").string(), "--out", (d / "x.json").string()}).code ==
          cli::kExitUsage);
    CHECK(run({"apply", "--in", (d / "missing.bin").string(), "--out", (d / "x.json").string()}).code ==
          cli::kExitUsage);
}

TEST_CASE("verify-representation") {
    const Run ok = run({"verify-representation", "--trials", "100"});
    CHECK(ok.code == 0);
    CHECK(lines(ok.out) == 1 + 200);

    const Run empty = run({"verify-representation", "--trials", "0"});
    CHECK(empty.code == 0);
    CHECK(lines(empty.out) == 1);

    const Run loose = run({"verify-representation", "--trials", "2", "--tmax-tol", "1e3"});
    CHECK(loose.code == cli::kExitInfeasible);
    CHECK(loose.err.find("required t_max") != std::string::npos);
    CHECK(run({"verify-representation", "--trials", "2", "--tmax", "0.5"}).code == cli::kExitInfeasible);
}

TEST_CASE("verify-embedding") {
    CHECK(run({"verify-embedding", "--p", "3", "--trials", "1000"}).code == 0);
    const Run c = run({"verify-embedding", "--p", "4", "--mode", "choi+", "--trials", "50"});
    CHECK(c.code == 0);
    CHECK(lines(c.out) == 51);
    CHECK(run({"verify-embedding", "--p", "4", "--mode", "choi-", "--trials", "50"}).code == 0);
    CHECK(run({"verify-embedding", "--p", "4", "--mode", "what", "--trials", "5"}).code == cli::kExitUsage);
    const Run j = run({"verify-embedding", "--p", "2,3", "--trials", "3", "--format", "json"});
    CHECK(nlohmann::json::parse(j.out)["rows"].size() == 6);
}

TEST_CASE("norm-search and refine") {
    const Run p2 = run({"norm-search", "--p", "2", "--alpha", "1,-1", "--group", "8,8", "--restarts", "4"});
    REQUIRE(p2.code == 0);
    const auto j = nlohmann::json::parse(p2.out);
    CHECK(std::abs(j["best_ratio"].get<double>() - j["multiplier_norm"].get<double>()) <= 1e-3);

    const Run ref = run({"refine", "--p", "4", "--alpha", "1,-1", "--m", "4,8", "--restarts", "2", "--iters", "50"});
    CHECK(ref.code == 0);
    CHECK(ref.out.rfind("m,best_ratio,margin,iterations\n", 0) == 0);
    CHECK(lines(ref.out) == 3);

    CHECK(run({"norm-search", "--p", "4", "--group", "4,4", "--restarts", "1", "--iters", "20", "--corrupt-scale",
               "5"})
              .code == cli::kExitViolation);
    CHECK(run({"refine", "--p", "4", "--m", "4", "--restarts", "1", "--iters", "20", "--corrupt-scale", "5"}).code ==
          cli::kExitViolation);
    CHECK(run({"norm-search", "--p", "4", "--group", "4,4", "--field", "real", "--alpha", "0:1,1"}).code ==
          cli::kExitUsage);
}

TEST_CASE("same invocation, same payload; manifest records the run") {
    const fs::path d = scratch();
    for (const char* name : {"a.csv", "b.csv"}) {
        REQUIRE(run({"--seed", "17", "verify-embedding", "--p", "1.5,4", "--trials", "5", "--out", (d / name).string()})
                    .code == 0);
    }
    CHECK(slurp(d / "a.csv") == slurp(d / "b.csv"));
    CHECK(run({"verify-embedding", "--seed", "18", "--p", "1.5,4", "--trials", "5"}).out != slurp(d / "a.csv"));

    const auto m = nlohmann::json::parse(slurp(d / "a.csv.manifest.json"));
    CHECK(m["command"] == "verify-embedding");
    CHECK(m["seed"] == 17);
    CHECK(m["parameters"]["trials"] == 5);
    CHECK(m["outputs"][0] == (d / "a.csv").string());
    CHECK(m.contains("timestamp"));
    CHECK(m.contains("tool_version"));

    const Run s1 = run({"norm-search", "--p", "3", "--group", "6,6", "--restarts", "3", "--iters", "40", "--seed", "5"});
    const Run s2 = run({"norm-search", "--p", "3", "--group", "6,6", "--restarts", "3", "--iters", "40", "--seed", "5"});
    CHECK(s1.out == s2.out);
}
