#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return PSIDO_CLI_PATH; }

int run(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("psido_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

const char* kXi1 = R"({"n":1,"terms":[{"x":[0],"xi":[1],"re":"1","im":"0"}]})";
const char* kX1 = R"({"n":1,"terms":[{"x":[1],"xi":[0],"re":"1","im":"0"}]})";
const char* kMinusXiSq = R"({"n":1,"terms":[{"x":[0],"xi":[2],"re":"-1","im":"0"}]})";
const char* kFlat2 = R"({"name":"flat2","n":2,"metric":"flat","box":[[-1,1],[-1,1]]})";
const char* kSphere = R"({"name":"s2","n":2,"metric":"sphere2","box":[[0.5,2.6],[0.2,6.0]]})";
const char* kSchwarzschild =
    R"({"name":"sch","n":3,"metric":"schwarzschild_spatial","mass":1.0,
        "box":[[3.0,10.0],[0.5,2.6],[0.2,6.0]]})";

}  // namespace

TEST_CASE("symbol-compose runs the worked example and passes its checks") {
    TempDir tmp;
    write(tmp.path / "a.json", kXi1);
    write(tmp.path / "b.json", kX1);
    const std::string out = (tmp.path / "out").string();
    CHECK(run("--out " + out + " symbol-compose --a " + (tmp.path / "a.json").string() +
              " --b " + (tmp.path / "b.json").string() + " --order 1") == 0);
    CHECK(fs::exists(out + "/composed.json"));
    const std::string rep = slurp(out + "/report.json");
    CHECK(rep.find("\"status\": \"pass\"") != std::string::npos);
    CHECK(rep.find("\"fail\"") == std::string::npos);
}

TEST_CASE("parametrix emits the remainder report with tiny residuals") {
    TempDir tmp;
    write(tmp.path / "p.json", kMinusXiSq);
    const std::string out = (tmp.path / "out").string();
    CHECK(run("--out " + out + " parametrix --symbol " + (tmp.path / "p.json").string() +
              " --r0 1 --r1 2 --grid 64") == 0);
    const std::string rj = slurp(out + "/remainder.json");
    CHECK(rj.find("\"tail_norm\"") != std::string::npos);
    CHECK(rj.find("\"r0\"") != std::string::npos);
}

TEST_CASE("geometry-check passes on flat and sphere charts") {
    TempDir tmp;
    write(tmp.path / "flat.json", kFlat2);
    write(tmp.path / "s2.json", kSphere);
    const std::string out1 = (tmp.path / "o1").string();
    const std::string out2 = (tmp.path / "o2").string();
    CHECK(run("--out " + out1 + " geometry-check --geometry " +
              (tmp.path / "flat.json").string() + " --order 3") == 0);
    CHECK(run("--out " + out2 + " geometry-check --geometry " +
              (tmp.path / "s2.json").string() + " --order 4") == 0);
    // flat curvature residuals are exactly zero
    const std::string csv = slurp(out1 + "/geometry_checks.csv");
    CHECK(csv.find("curvature-antisymmetry,0.0000000000000000e+00") != std::string::npos);
    CHECK(csv.find("fail") == std::string::npos);

    // the three-dimensional slice passes the same battery
    write(tmp.path / "sch.json", kSchwarzschild);
    const std::string out3 = (tmp.path / "o3").string();
    CHECK(run("--out " + out3 + " geometry-check --geometry " +
              (tmp.path / "sch.json").string() + " --order 3") == 0);
    CHECK(slurp(out3 + "/geometry_checks.csv").find("fail") == std::string::npos);
}

TEST_CASE("missing geometry file fails with a clear message and nonzero exit") {
    TempDir tmp;
    const std::string cmd = std::string(cli_path()) + " --out " + (tmp.path / "o").string() +
                            " geometry-check --geometry missing.json 2> " +
                            (tmp.path / "err.txt").string();
    const int rc = WEXITSTATUS(std::system(cmd.c_str()));
    CHECK(rc != 0);
    CHECK(slurp(tmp.path / "err.txt").find("file not found: missing.json") !=
          std::string::npos);
}

TEST_CASE("unknown command exits nonzero") {
    CHECK(run("frobnicate") != 0);
}

TEST_CASE("conflicting hawking flags name both offenders") {
    TempDir tmp;
    const std::string cmd = std::string(cli_path()) + " --out " + (tmp.path / "o").string() +
                            " hawking --mass 1 --omega-min 3 --omega-max 1 2> " +
                            (tmp.path / "err.txt").string();
    const int rc = WEXITSTATUS(std::system(cmd.c_str()));
    CHECK(rc != 0);
    const std::string err = slurp(tmp.path / "err.txt");
    CHECK(err.find("--omega-min") != std::string::npos);
    CHECK(err.find("--omega-max") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags override") {
    TempDir tmp;
    write(tmp.path / "conf.json", R"({"alpha": 2.0, "kmax": 5.0, "samples": 6})");
    const std::string out1 = (tmp.path / "o1").string();
    CHECK(run("--config " + (tmp.path / "conf.json").string() + " --out " + out1 +
              " qed-sweep") == 0);
    std::string csv = slurp(out1 + "/qed_sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);  // header + 6 rows

    const std::string out2 = (tmp.path / "o2").string();
    CHECK(run("--config " + (tmp.path / "conf.json").string() + " --out " + out2 +
              " qed-sweep --samples 2") == 0);
    csv = slurp(out2 + "/qed_sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("identical runs produce byte-identical artifacts") {
    TempDir tmp;
    const std::string out = (tmp.path / "o").string();
    const std::string args = "--out " + out + " hawking --mass 1 --points 12 --modes 3";
    CHECK(run(args) == 0);
    const std::string spectrum1 = slurp(out + "/spectrum.csv");
    const std::string density1 = slurp(out + "/density.csv");
    const std::string report1 = slurp(out + "/report.json");
    CHECK(run(args) == 0);
    CHECK(slurp(out + "/spectrum.csv") == spectrum1);
    CHECK(slurp(out + "/density.csv") == density1);
    CHECK(slurp(out + "/report.json") == report1);

    // seeded sweep determinism
    const std::string out2 = (tmp.path / "o2").string();
    const std::string args2 = "--out " + out2 + " qed-sweep --samples 20 --seed 7";
    CHECK(run(args2) == 0);
    const std::string sweep1 = slurp(out2 + "/qed_sweep.csv");
    CHECK(run(args2) == 0);
    CHECK(slurp(out2 + "/qed_sweep.csv") == sweep1);
}

TEST_CASE("PSIDO_OUT environment variable overrides --out") {
    TempDir tmp;
    const std::string envdir = (tmp.path / "envdir").string();
    const std::string cmd = "PSIDO_OUT=" + envdir + " " + std::string(cli_path()) +
                            " --out " + (tmp.path / "ignored").string() +
                            " qed-sweep --samples 2 > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(fs::exists(envdir + "/qed_sweep.csv"));
    CHECK_FALSE(fs::exists(tmp.path / "ignored"));
}
