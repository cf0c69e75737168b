// End-to-end checks of the command-line tool (spawned as a subprocess).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path g_dir = [] {
    fs::path d = fs::temp_directory_path() / "s3pot_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}();

int run(const std::string& args) {
    const std::string cmd = std::string(S3POT_CLI_PATH) + " " + args + " > " +
                            (g_dir / "stdout.txt").string() + " 2> " +
                            (g_dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string captured_stdout() { return slurp(g_dir / "stdout.txt"); }

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("potential: tRM sample") {
    const fs::path out = g_dir / "trm.csv";
    CHECK(run("potential --family trm --alpha-k 0.5 --ell 0 --k 2 --points 100 -o " +
              out.string()) == 0);
    const std::string body = slurp(out);
    CHECK(body.rfind("chi,V", 0) == 0);
    CHECK(count_lines(body) == 101);
}

TEST_CASE("potential: dipole columns") {
    CHECK(run("potential --family dipole --alphas-nc 3 --lambda 0 --points 50") == 0);
    const std::string body = captured_stdout();
    CHECK(body.rfind("chi,gamma_N,gamma_S,V_CED", 0) == 0);
    CHECK(count_lines(body) == 51);
}

TEST_CASE("potential: custom profile equals the linear family") {
    const fs::path spec = g_dir / "profile.ini";
    {
        std::ofstream f(spec);
        f << "# linear profile, f = 0.25 chi\nchi = 0.25\n";
    }
    const fs::path a = g_dir / "custom.csv", b = g_dir / "builtin.csv";
    CHECK(run("potential --family custom --f-spec " + spec.string() +
              " --ell 0 --k 2 --points 64 -o " + a.string()) == 0);
    CHECK(run("potential --family trm --alpha-k 0.5 --ell 0 --k 2 --points 64 -o " +
              b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("potential: unknown family exits 2") {
    CHECK(run("potential --family nosuch") == 2);
}

TEST_CASE("byte-identical reruns") {
    const fs::path a = g_dir / "idem_a.csv", b = g_dir / "idem_b.csv";
    const std::string args = "potential --family scarf --alpha 1 --ell 1 --k 1 --points 200 -o ";
    CHECK(run(args + a.string()) == 0);
    CHECK(run(args + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));

    const fs::path ja = g_dir / "idem_a.json", jb = g_dir / "idem_b.json";
    const std::string jargs =
        "solve --family free --ell 0 --count 3 --grid-n 500 --format json -o ";
    CHECK(run(jargs + ja.string()) == 0);
    CHECK(run(jargs + jb.string()) == 0);
    CHECK(slurp(ja) == slurp(jb));
}

TEST_CASE("solve: free spectrum CSV with analytic references") {
    const fs::path out = g_dir / "free.csv";
    CHECK(run("solve --family free --ell 0 --count 3 --grid-n 1000 -o " + out.string()) == 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "index,eigenvalue,analytic_reference,abs_error");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string idx, ev, ref, err;
        std::getline(ss, idx, ',');
        std::getline(ss, ev, ',');
        std::getline(ss, ref, ',');
        std::getline(ss, err, ',');
        CHECK(std::stod(err) < 1e-3);
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("solve: eigenvector dump") {
    const fs::path vec = g_dir / "psi.csv";
    CHECK(run("solve --family trm --alpha-k 0.5 --ell 0 --k 0 --count 2 --grid-n 200 "
              "--dump-eigenvectors " +
              vec.string() + " -o -") == 0);
    std::ifstream in(vec);
    std::string header;
    std::getline(in, header);
    CHECK(header == "chi,psi0,psi1");
}

TEST_CASE("verify: default run passes") {
    CHECK(run("verify --grid-n 1000") == 0);
    const std::string body = captured_stdout();
    CHECK(body.find("[FAIL]") == std::string::npos);
    CHECK(body.find("all checks passed") != std::string::npos);
}

TEST_CASE("verify: quadratic family skips the excited-state analytic check") {
    CHECK(run("verify --family qes --k 2 --grid-n 1000") == 0);
    const std::string body = captured_stdout();
    CHECK(body.find("[SKIP] qes/qes-excited-states") != std::string::npos);
}

TEST_CASE("corrupted config exits 2") {
    const fs::path cfg = g_dir / "broken.ini";
    {
        std::ofstream f(cfg);
        f << "[potential\nthis is not ini\n";
    }
    CHECK(run("--config " + cfg.string() + " potential --family trm") == 2);
}

TEST_CASE("config file feeds defaults, flags override") {
    const fs::path cfg = g_dir / "phys.ini";
    {
        std::ofstream f(cfg);
        f << "lambda-qcd=400\nradius-fm=1.0\n";
    }
    const fs::path out = g_dir / "temp.csv";
    CHECK(run("--config " + cfg.string() +
              " deconfine --report temperature --r-sequence 1.0 -o " + out.string()) == 0);
    // T = 400^2 * 1 / (3 * 197.327) = 270.2 MeV
    const std::string body = slurp(out);
    CHECK(body.find("270.2") != std::string::npos);
}

TEST_CASE("fit: synthetic round trip through JSON") {
    const fs::path out = g_dir / "fit.json";
    CHECK(run("fit --synthetic --k-max 5 --pred-csv " + (g_dir / "pred.csv").string() +
              " --format json -o " + out.string()) == 0);
    const json j = json::parse(slurp(out));
    CHECK(std::abs(j["A"].get<double>() - 0.10964) < 1e-9);
    CHECK(std::abs(j["B"].get<double>() - 1.0434) < 1e-9);
    CHECK(std::abs(j["C"].get<double>() - 1.1873) < 1e-9);
    CHECK(j["residuals"].size() == 6);
    CHECK(j["covariance"].size() == 3);
    const std::string pred = slurp(g_dir / "pred.csv");
    CHECK(pred.rfind("label,K,observed_mass_mev,predicted_mass_mev,residual_gev2", 0) == 0);
}

TEST_CASE("fit: file input") {
    const fs::path csv = g_dir / "levels.csv";
    {
        std::ofstream f(csv);
        f << "label,mass_mev,K\n";
        // synthetic masses from the published constants
        f << "a,503.528,0\nb,1168.34,1\nc,1434.62,2\nd,1696.0,3\n";
    }
    CHECK(run("fit --input " + csv.string() + " -o -") == 0);
    CHECK(run("fit --input " + (g_dir / "missing.csv").string()) == 2);
}

TEST_CASE("coupling: figure-2 reproduction") {
    const fs::path out = g_dir / "fig2.csv";
    CHECK(run("coupling --figure2 -o " + out.string()) == 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,alpha_s");
    int rows = 0;
    std::string line;
    double at1 = 0.0;
    while (std::getline(in, line)) {
        ++rows;
        std::stringstream ss(line);
        std::string x, a;
        std::getline(ss, x, ',');
        std::getline(ss, a, ',');
        if (std::abs(std::stod(x) - 1.0) < 0.04) at1 = std::stod(a);
    }
    CHECK(rows == 150);
    CHECK(at1 == doctest::Approx(1.4 / std::log(2.0)).epsilon(1e-2));
}

TEST_CASE("coupling: running form with non-perturbative tagging") {
    const fs::path out = g_dir / "alpha.csv";
    CHECK(run("coupling --q2 0 --rho 0 --x-min 0.1 --x-max 10 --points 20 -o " +
              out.string()) == 0);
    const std::string body = slurp(out);
    CHECK(body.rfind("x,alpha_s,perturbative,log_argument", 0) == 0);
    CHECK(body.find(",0,") != std::string::npos);  // small x rows are non-perturbative
}

TEST_CASE("deconfine reports") {
    CHECK(run("deconfine --report temperature --r-sequence 0.58,2.37 -o -") == 0);
    CHECK(captured_stdout().find("39.19") != std::string::npos);
    CHECK(run("deconfine --report collapse --r-max-fraction 0.1 --rows 10 -o -") == 0);
    CHECK(run("deconfine --report rydberg --k-max 3 --k-invfm 0 -o -") == 0);
    const std::string body = captured_stdout();
    CHECK(count_lines(body) == 5);
    CHECK(run("deconfine --report nosuch") == 2);
}

TEST_CASE("reproduce-paper") {
    const fs::path out = g_dir / "repro.csv";
    CHECK(run("reproduce-paper -o " + out.string()) == 0);
    const std::string body = captured_stdout();
    CHECK(body.find("[FAIL]") == std::string::npos);
    CHECK(body.find("T_b-st") != std::string::npos);
    CHECK(body.find("39.19") != std::string::npos);
    const std::string table = slurp(out);
    CHECK(table.find("fit A (GeV^2)") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("") == 2);
    CHECK(run("potential") == 2);             // missing required --family
    CHECK(run("solve --family free --mode bogus") == 2);
}

TEST_CASE("mic-kepler warns when mu is not integral or half-integral") {
    CHECK(run("potential --family mic-kepler --alpha-k 0.5 --beta 0.37 --ell 0 --k 1 "
              "--points 32 -o " + (g_dir / "mic.csv").string()) == 0);
    CHECK(slurp(g_dir / "stderr.txt").find("warning: mu") != std::string::npos);
}

TEST_CASE("S3POT_OUTPUT_DIR redirects relative outputs") {
    const fs::path dir = g_dir / "envout";
    const std::string cmd = "S3POT_OUTPUT_DIR=" + dir.string() + " " + S3POT_CLI_PATH +
                            " potential --family trm --points 32 -o env.csv > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(fs::exists(dir / "env.csv"));
}
