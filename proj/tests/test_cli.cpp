// End-to-end checks of the command-line tool: spawns the real binary and
// inspects exit codes and emitted files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string cli = ORKA_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("orka_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    const int rc = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<long> read_lambda(const std::string& path) {
    std::ifstream in(path);
    std::vector<long> v;
    long x;
    while (in >> x) v.push_back(x);
    return v;
}

}  // namespace

TEST_CASE("bad arguments exit with 2") {
    CHECK(run("") == 2);
    CHECK(run("no-such-command") == 2);
    CHECK(run("gen-gap") == 2);                       // --out is required
    CHECK(run("gen-gap --out /tmp/x --format tsv") == 2);
    TempDir tmp;
    CHECK(run("extract --in " + tmp.file("gap.csv") + " --mu -3 --out " +
              tmp.file("r")) != 0);
}

TEST_CASE("gap matrix pipeline and exit codes") {
    TempDir tmp;
    const std::string gap = tmp.file("gap.csv");
    REQUIRE(run("gen-gap --out " + gap) == 0);
    CHECK(fs::exists(gap));

    // budget exhaustion -> 3
    CHECK(run("extract --in " + gap + " --k 15 --node-budget 100 --out " +
              tmp.file("r")) == 3);
    // missing input -> 4
    CHECK(run("extract --in " + tmp.file("nope.csv") + " --out " + tmp.file("r")) == 4);

    REQUIRE(run("extract --in " + gap + " --mu 1000 --c 1 --k 3 --out " +
                tmp.file("run")) == 0);
    CHECK(fs::exists(tmp.file("run_u.csv")));
    CHECK(fs::exists(tmp.file("run_lambda.csv")));
    CHECK(fs::exists(tmp.file("run_residual.csv")));
    const std::string report = slurp(tmp.file("run_report.txt"));
    CHECK(report.find("mu: 1000") != std::string::npos);
    CHECK(report.find("seconds_graph") != std::string::npos);

    auto lam = read_lambda(tmp.file("run_lambda.csv"));
    REQUIRE(lam.size() == 121);
    // K=3 climbs the first short gaps, loses the trail inside the first gap
    // wider than 3, then ticks down by one per step
    for (std::size_t j = 1; j <= 6; ++j) CHECK(lam[j] == lam[j - 1] + 1);
    for (std::size_t j = 13; j < 121; ++j) CHECK(lam[j] == lam[j - 1] - 1);
}

TEST_CASE("scene generation, denoise and psnr round trip") {
    TempDir tmp;
    const std::string scene = tmp.file("scene.csv");
    REQUIRE(run("gen-scene --rows 64 --cols 16 --velocity 1 --width 3 --seed 5 "
                "--noise-psnr 5 --out " + scene) == 0);
    REQUIRE(fs::exists(tmp.file("scene_clean.csv")));
    REQUIRE(fs::exists(tmp.file("scene_truth.csv")));

    const std::string out = cli + " psnr --ref " + tmp.file("scene_clean.csv") +
                            " --in " + scene + " > " + tmp.file("psnr.txt");
    REQUIRE(WEXITSTATUS(std::system(out.c_str())) == 0);
    const double db = std::stod(slurp(tmp.file("psnr.txt")));
    CHECK(db == doctest::Approx(5.0).epsilon(1e-6));

    REQUIRE(run("denoise --in " + scene + " --objects 1 --mu 10 --k 4 --out " +
                tmp.file("den.csv")) == 0);
    CHECK(fs::exists(tmp.file("den.csv")));
}

TEST_CASE("mu zero leaves a zero residual") {
    TempDir tmp;
    REQUIRE(run("gen-gap --out " + tmp.file("gap.csv")) == 0);
    REQUIRE(run("extract --in " + tmp.file("gap.csv") + " --mu 0 --out " +
                tmp.file("z")) == 0);
    std::ifstream in(tmp.file("z_residual.csv"));
    std::string line;
    while (std::getline(in, line))
        for (char ch : line) CHECK((ch == '0' || ch == ','));
}

TEST_CASE("config file values with flag override") {
    TempDir tmp;
    const std::string cfg = tmp.file("run.cfg");
    std::ofstream(cfg) << "mu=1000\nk=3\nc=1\n";
    REQUIRE(run("gen-gap --out " + tmp.file("gap.csv")) == 0);

    REQUIRE(run("extract --config " + cfg + " --in " + tmp.file("gap.csv") +
                " --out " + tmp.file("a")) == 0);
    CHECK(slurp(tmp.file("a_report.txt")).find("k: 3") != std::string::npos);

    // the flag wins over the file
    REQUIRE(run("extract --config " + cfg + " --k 2 --in " + tmp.file("gap.csv") +
                " --out " + tmp.file("b")) == 0);
    CHECK(slurp(tmp.file("b_report.txt")).find("k: 2") != std::string::npos);
}

TEST_CASE("benchmarks and oracle comparison emit csv") {
    TempDir tmp;
    REQUIRE(run("bench-k --kmin 2 --kmax 4 --rows 32 --cols 24 --out " +
                tmp.file("bk.csv")) == 0);
    const std::string bk = slurp(tmp.file("bk.csv"));
    CHECK(bk.rfind("k,seconds", 0) == 0);
    CHECK(std::count(bk.begin(), bk.end(), '\n') == 4);

    REQUIRE(run("bench-n --nmin 8 --nmax 16 --rows 32 --k 3 --out " +
                tmp.file("bn.csv")) == 0);
    CHECK(slurp(tmp.file("bn.csv")).rfind("n,seconds", 0) == 0);

    REQUIRE(run("compare-oracle --size 5 --trials 2 --mus 0.5,2 --out " +
                tmp.file("cmp.csv")) == 0);
    const std::string cmp = slurp(tmp.file("cmp.csv"));
    CHECK(cmp.rfind("mu,k,mean_error", 0) == 0);
    CHECK(std::count(cmp.begin(), cmp.end(), '\n') == 9);  // header + 2 mus * 4 ks
}

TEST_CASE("binary format flag") {
    TempDir tmp;
    REQUIRE(run("gen-gap --format bin --out " + tmp.file("gap.bin")) == 0);
    std::ifstream in(tmp.file("gap.bin"), std::ios::binary);
    char magic[4];
    in.read(magic, 4);
    CHECK(std::string(magic, 4) == "ORKA");
}
