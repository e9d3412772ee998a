#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = QRHO_CLI_PATH;

int run(const std::string& args, const std::string& cwd) {
    const std::string cmd = "cd " + cwd + " && " + kCli + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("qrho_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("figure subcommands write CSV plus manifest") {
    TempDir tmp;
    REQUIRE(run("stationary-dist --lambda 1 --gamma 1 --points 11 --out-dir sd", tmp.path.string()) == 0);
    CHECK(fs::exists(tmp.path / "sd/stationary_lambda1_gamma1.csv"));
    CHECK(fs::exists(tmp.path / "sd/stationary.manifest.json"));
    const std::string csv = slurp(tmp.path / "sd/stationary_lambda1_gamma1.csv");
    CHECK(csv.rfind("theta_bar,q_s\n", 0) == 0);

    REQUIRE(run("vacuum-transition --lambda 1 --rho 0,0.36 --out d.csv", tmp.path.string()) == 0);
    CHECK(slurp(tmp.path / "d.csv").rfind("rho,lambda,delta\n", 0) == 0);
    const std::string manifest = slurp(tmp.path / "d.csv.manifest.json");
    for (const char* key : {"\"subcommand\"", "\"parameters\"", "\"seed\"",
                            "\"tolerances\"", "\"version\"", "\"outputs\""})
        CHECK(manifest.find(key) != std::string::npos);

    REQUIRE(run("thermo --lambda-plus 1,10 --out t.csv", tmp.path.string()) == 0);
    CHECK(slurp(tmp.path / "t.csv").rfind("lambda_plus,e_osc,width,entropy\n", 0) == 0);

    REQUIRE(run("smatrix --n-max 4 --out s.csv", tmp.path.string()) == 0);
    CHECK(slurp(tmp.path / "s.csv").rfind("n,m,re,im,abs2\n", 0) == 0);

    REQUIRE(run("sde-ensemble --n-traj 128 --t1 3 --out h.csv --dump-trajectory tr.csv",
                tmp.path.string()) == 0);
    CHECK(slurp(tmp.path / "tr.csv").rfind("t,theta,phi,sigma,r,tau\n", 0) == 0);
}

TEST_CASE("exit codes: validation failures are 1") {
    TempDir tmp;
    CHECK(run("vacuum-transition --lambda 1 --rho 1.0 --out d.csv", tmp.path.string()) == 1);
    CHECK(run("vacuum-transition --lambda -1 --rho 0.2 --out d.csv", tmp.path.string()) == 1);
    CHECK(run("thermo --lambda-plus 0 --out t.csv", tmp.path.string()) == 1);
    CHECK(run("sde-ensemble --dt 0.5 --out h.csv", tmp.path.string()) == 1);
    CHECK(run("stationary-dist --lambda 1 --points 1 --out-dir sd", tmp.path.string()) == 1);
}

TEST_CASE("manifest round-trip reproduces the CSV byte for byte") {
    TempDir tmp;
    REQUIRE(run("vacuum-transition --lambda 0.7,2 --rho 0:0.6:4 --out d.csv",
                tmp.path.string()) == 0);
    const std::string once = slurp(tmp.path / "d.csv");
    REQUIRE(run("--from-manifest d.csv.manifest.json", tmp.path.string()) == 0);
    CHECK(slurp(tmp.path / "d.csv") == once);
}

TEST_CASE("byte-identical output across runs and worker counts") {
    TempDir tmp;
    REQUIRE(run("sde-ensemble --n-traj 256 --t1 4 --epsilon 1 --out a.csv",
                tmp.path.string()) == 0);
    REQUIRE(run("sde-ensemble --n-traj 256 --t1 4 --epsilon 1 --out b.csv",
                tmp.path.string()) == 0);
    CHECK(slurp(tmp.path / "a.csv") == slurp(tmp.path / "b.csv"));

    setenv("QRHO_THREADS", "1", 1);
    REQUIRE(run("sde-ensemble --n-traj 256 --t1 4 --epsilon 1 --out c1.csv",
                tmp.path.string()) == 0);
    setenv("QRHO_THREADS", "8", 1);
    REQUIRE(run("sde-ensemble --n-traj 256 --t1 4 --epsilon 1 --out c8.csv",
                tmp.path.string()) == 0);
    unsetenv("QRHO_THREADS");
    CHECK(slurp(tmp.path / "c1.csv") == slurp(tmp.path / "c8.csv"));
}
