#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "crackwake/cli.hpp"
#include "crackwake/scenario.hpp"

using namespace crackwake;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CRACKWAKE_TEST_DATA;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "crackwake_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("sif on the symmetric pair") {
    const Run r = run({"sif", "--config", (kData / "symmetric_pair.cfg").string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("K0 = 0.797884561\n") != std::string::npos);
    CHECK(r.out.find("A0 = -0.797884561\n") != std::string::npos);
}

TEST_CASE("perturb with a zero-contrast inclusion") {
    const fs::path cfg = write("zero.cfg", R"(
bimaterial { mu_plus = 1, mu_minus = 2 }
loading { three_point { P = 1, a = 3, b = 1 } }
defect { kind = elastic_ellipse, d = 1, phi = 0.4, la = 0.1, lb = 0.05, mu_star = 1 }
)");
    const Run r = run({"perturb", "--config", cfg.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("total dK = 0\n") != std::string::npos);
    CHECK(r.out.find("phi = 0\n") != std::string::npos);
}

TEST_CASE("dipole, neutral and the diluteness warning") {
    const Run d = run({"dipole", "--config", (kData / "pair_a.cfg").string()});
    CHECK(d.code == kExitOk);
    CHECK(d.out.find("defect 0 (microcrack): M = [[") != std::string::npos);

    const Run n = run({"neutral", "--config", (kData / "pair_a.cfg").string()});
    CHECK(n.code == kExitOk);
    CHECK(n.out.find("pair a: rigid_line") != std::string::npos);
    CHECK(n.out.find("pair b") == std::string::npos);
    CHECK(n.out.find("la = 0.2") != std::string::npos);

    const fs::path big = write("big.cfg", R"(
bimaterial { mu_plus = 1, mu_minus = 1 }
loading { three_point { P = 1, a = 3 } }
defect { kind = microcrack, d = 1, phi = 1.0, la = 0.5 }
)");
    const Run p = run({"perturb", "--config", big.string()});
    CHECK(p.code == kExitOk);
    CHECK(p.err.find("warning") != std::string::npos);
}

TEST_CASE("map writes CSV and PGM") {
    const fs::path out = scratch("map.csv");
    const Run r = run({"map", "--config", (kData / "pair_a.cfg").string(), "--out", out.string(), "--pgm",
                       "--grid", "8x4"});
    CHECK(r.code == kExitOk);
    const std::string csv = slurp(out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 8 * 4);
    CHECK(slurp(scratch("map.pgm")).rfind("P2\n8 4\n255\n", 0) == 0);

    const Run again = run({"map", "--config", (kData / "pair_a.cfg").string(), "--out",
                           scratch("map2.csv").string(), "--grid", "8x4"});
    CHECK(again.code == kExitOk);
    CHECK(slurp(scratch("map2.csv")) == csv);
}

TEST_CASE("propagate writes the trace") {
    const fs::path out = scratch("trace.csv");
    const Run r = run({"propagate", "--config", (kData / "pair_a.cfg").string(), "--out", out.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("verdict = arrest") != std::string::npos);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("iter,phi,x,dK_total,K0,A0,verdict_flag\n", 0) == 0);
    CHECK(csv.substr(csv.size() - 3) == ",1\n");
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == kExitValidation);
    CHECK(run({"bogus", "--config", "x"}).code == kExitValidation);
    CHECK(run({"sif", "--config", scratch("missing.cfg").string()}).code == kExitValidation);
    CHECK(run({"sif", "--help"}).code == kExitOk);

    const fs::path unbalanced = write("unbalanced.cfg", R"(
bimaterial { mu_plus = 1, mu_minus = 1 }
loading { force { face = "+", x1 = -1, p = 1 } }
)");
    const Run u = run({"sif", "--config", unbalanced.string()});
    CHECK(u.code == kExitValidation);
    CHECK(u.err.find("line 3") != std::string::npos);

    // The tip runs into a microcrack directly ahead.
    const fs::path ahead = write("ahead.cfg", R"(
bimaterial { mu_plus = 1, mu_minus = 1 }
loading { three_point { P = 1, a = 3 } }
defect { kind = microcrack, x = 0.3, y = 0, la = 0.1 }
)");
    const Run a = run({"propagate", "--config", ahead.string(), "--out", scratch("ahead.csv").string()});
    CHECK(a.code == kExitNumerical);
    CHECK(a.out.find("verdict = invalid") != std::string::npos);

    // Field point on a loaded crack face.
    const fs::path face = write("face.cfg", R"(
bimaterial { mu_plus = 1, mu_minus = 1 }
loading { three_point { P = 1, a = 3 } }
defect { kind = microcrack, d = 3, phi = 180deg, la = 0.1 }
)");
    CHECK(run({"perturb", "--config", face.string()}).code == kExitNumerical);
}

TEST_CASE("dump-config output reparses to the same scenario") {
    const fs::path cfg = kData / "pair_a.cfg";
    const Run r = run({"map", "--config", cfg.string(), "--dump-config"});
    CHECK(r.code == kExitOk);
    CHECK(parse_scenario(r.out) == load_scenario(cfg.string()));
}
