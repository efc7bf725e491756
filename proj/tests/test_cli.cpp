// Process-level checks of the scan binary: exit codes, output files, and
// byte-identical reruns.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(SCAN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const char* kConfig = R"({
  "state": {"family": "isotropic2",
            "params": {"alpha": {"start": 0.9, "stop": 1.0, "step": 0.01}}},
  "witness": {"family": "wlp", "params": {"p": 0.5213}},
  "kinds": ["WNL1", "F_BASIC"],
  "seed": 42
})";

}  // namespace

TEST_CASE("registry subcommand") {
    CHECK(run("registry") == 0);
}

TEST_CASE("detect writes deterministic csv and json") {
    TempDir dir("nlew_cli_detect");
    const fs::path cfg = dir.path / "sweep.json";
    std::ofstream(cfg) << kConfig;

    CHECK(run("detect --config " + cfg.string() + " --out " + (dir.path / "a").string()) ==
          0);
    CHECK(run("detect --config " + cfg.string() + " --out " + (dir.path / "b").string()) ==
          0);
    const std::string csv_a = slurp(dir.path / "a" / "detect.csv");
    const std::string csv_b = slurp(dir.path / "b" / "detect.csv");
    REQUIRE(!csv_a.empty());
    CHECK(csv_a == csv_b);
    CHECK(csv_a.rfind("family,alpha,p,ppt_class,tr_wl,WNL1,F_BASIC,intermediates_digest",
                      0) == 0);
    CHECK(fs::exists(dir.path / "a" / "detect.json"));
}

TEST_CASE("invalid configs exit with code 2") {
    TempDir dir("nlew_cli_badcfg");
    const fs::path cfg = dir.path / "bad.json";
    std::ofstream(cfg) << R"({"state": {"family": "isotropic2",
        "params": {"alpha": {"start": 0, "stop": 1, "step": -1}}},
        "witness": {"family": "wlp", "params": {"p": 0.5}},
        "kinds": ["WNL1"]})";
    CHECK(run("detect --config " + cfg.string() + " --out " + dir.path.string()) == 2);
    CHECK(run("detect --config " + (dir.path / "missing.json").string()) == 2);
    CHECK(run("certify --witness no_such_witness") == 2);
    CHECK(run("certify") == 2);  // missing required flag
    CHECK(run("--help") == 0);
}

TEST_CASE("certify passes for a valid witness") {
    TempDir dir("nlew_cli_certify");
    CHECK(run("certify --witness wlp --param p=0.5 --samples 500 --out " +
              dir.path.string()) == 0);
    CHECK(fs::exists(dir.path / "certify.json"));
}

TEST_CASE("sepmax reports the closed form and caches seesaw results") {
    TempDir dir("nlew_cli_sepmax");
    CHECK(run("sepmax --witness wlp --param p=0.3 --out " + dir.path.string()) == 0);
    CHECK(slurp(dir.path / "sepmax.json").find("0.3725") != std::string::npos);

    CHECK(run("sepmax --witness wlc --restarts 8 --out " + dir.path.string()) == 0);
    CHECK(fs::exists(dir.path / "sepmax_cache.json"));
}

TEST_CASE("decompose exports coefficient tables") {
    TempDir dir("nlew_cli_decompose");
    CHECK(run("decompose --witness wlp --param p=0.25 --out " + dir.path.string()) == 0);
    const std::string csv = slurp(dir.path / "decomposition.csv");
    CHECK(csv.rfind("basis_a,basis_b,coefficient", 0) == 0);
    CHECK(csv.find("Z,Z,-0.125") != std::string::npos);  // (2p-1)/4 at p = 0.25
    CHECK(fs::exists(dir.path / "decomposition.json"));

    CHECK(run("decompose --witness wlc --operator square --out " +
              dir.path.string()) == 0);
}

TEST_CASE("reproduce single criterion") {
    TempDir dir("nlew_cli_reproduce");
    CHECK(run("reproduce --criterion 2 --out " + dir.path.string()) == 0);
    const std::string j = slurp(dir.path / "reproduce.json");
    CHECK(j.find("c2.bell-quartet") != std::string::npos);
    CHECK(j.find("\"failed\": false") != std::string::npos);
}
