// End-to-end checks of the command-line tool: exit codes, file handling,
// report contents, and byte-level determinism.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <qbist/geometry.hpp>
#include <qbist/io.hpp>
#include <qbist/random.hpp>
#include <qbist/representation.hpp>
#include <qbist/sic_system.hpp>

using namespace qbist;

namespace {

struct CliResult {
    int status = -1;
    std::string out;
};

std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("qbist-cli-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string scratch_file(const std::string& name) { return (scratch_dir() / name).string(); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string capture = scratch_file("capture-" + std::to_string(counter++) + ".txt");
    const std::string cmd =
        std::string(QBIST_CLI_PATH) + " " + args + " > " + capture + " 2>&1";
    const int raw = std::system(cmd.c_str());
    CliResult res;
    if (WIFEXITED(raw)) res.status = WEXITSTATUS(raw);
    res.out = slurp(capture);
    return res;
}

/// Value of a "key = value" line, or an empty string when absent.
std::string report_value(const std::string& out, const std::string& key) {
    const std::string needle = key + " = ";
    std::istringstream lines(out);
    std::string line;
    while (std::getline(lines, line))
        if (line.rfind(needle, 0) == 0) return line.substr(needle.size());
    return {};
}

double report_double(const std::string& out, const std::string& key) {
    const std::string text = report_value(out, key);
    REQUIRE_FALSE(text.empty());
    return std::stod(text);
}

}  // namespace

TEST_CASE("build and verify round trip through a projector file") {
    const std::string sic_path = scratch_file("d3.sic");
    const CliResult build = run_cli("build-sic --dim 3 --t 0.3 --sic " + sic_path);
    REQUIRE(build.status == 0);
    REQUIRE(report_value(build.out, "passed") == "true");

    const CliResult verify = run_cli("verify-sic --sic " + sic_path);
    REQUIRE(verify.status == 0);
    REQUIRE(report_value(verify.out, "passed") == "true");
}

TEST_CASE("verification of a corrupted file fails and names the worst pair") {
    const std::string good_path = scratch_file("d2.sic");
    REQUIRE(run_cli("build-sic --dim 2 --sic " + good_path).status == 0);

    auto in = io::open_input(good_path);
    auto [d, projs] = io::read_projectors(in);
    projs[2](0, 0) += 1e-3;
    const std::string bad_path = scratch_file("d2-corrupt.sic");
    auto out = io::open_output(bad_path);
    io::write_projectors(out, d, projs);
    out.close();

    const CliResult verify = run_cli("verify-sic --sic " + bad_path);
    REQUIRE(verify.status == 1);
    REQUIRE(report_value(verify.out, "passed") == "false");
    REQUIRE_FALSE(report_value(verify.out, "worst_pair_k").empty());
    REQUIRE_FALSE(report_value(verify.out, "worst_projector").empty());

    // a looser tolerance accepts the same file
    REQUIRE(run_cli("verify-sic --tol 0.01 --sic " + bad_path).status == 0);
}

TEST_CASE("represent and reconstruct invert each other through files") {
    const std::string sic_path = scratch_file("d3-rt.sic");
    REQUIRE(run_cli("build-sic --dim 3 --sic " + sic_path).status == 0);

    Rng rng(99);
    const DensityMatrix rho(random_density_entries(3, 3, rng));
    const std::string state_path = scratch_file("rho.state");
    {
        auto out = io::open_output(state_path);
        io::write_state(out, rho.matrix());
    }

    const std::string probs_path = scratch_file("rho.probs");
    const CliResult rep = run_cli("represent --sic " + sic_path + " --state " + state_path +
                                  " --probs " + probs_path);
    REQUIRE(rep.status == 0);
    REQUIRE_FALSE(report_value(rep.out, "sphere.inside").empty());

    const std::string back_path = scratch_file("rho-back.state");
    const CliResult rec = run_cli("reconstruct --sic " + sic_path + " --probs " + probs_path +
                                  " --state " + back_path);
    REQUIRE(rec.status == 0);
    REQUIRE(report_value(rec.out, "is_state") == "true");

    auto in = io::open_input(back_path);
    auto [db, m] = io::read_state_matrix(in);
    REQUIRE(db == 3);
    REQUIRE((m - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("reconstruction of a simplex vertex reports a non-state") {
    const std::string sic_path = scratch_file("d2-v.sic");
    REQUIRE(run_cli("build-sic --dim 2 --sic " + sic_path).status == 0);

    const std::string probs_path = scratch_file("vertex.probs");
    {
        auto out = io::open_output(probs_path);
        RealVector vertex = RealVector::Zero(4);
        vertex(0) = 1.0;
        io::write_probs(out, vertex);
    }
    const CliResult rec = run_cli("reconstruct --sic " + sic_path + " --probs " + probs_path);
    REQUIRE(rec.status == 1);
    REQUIRE(report_value(rec.out, "is_state") == "false");
    REQUIRE(report_double(rec.out, "min_eigenvalue") < -0.9);
}

TEST_CASE("measuring the reference through the tool returns the input vector") {
    const std::string sic_path = scratch_file("d2-born.sic");
    REQUIRE(run_cli("build-sic --dim 2 --sic " + sic_path).status == 0);

    auto in = io::open_input(sic_path);
    auto [d, projs] = io::read_projectors(in);
    const SicSystem sic(projs);
    Rng rng(7);
    const RealVector p = state_to_probs(sic, DensityMatrix::pure(haar_state(2, rng))).values();
    const std::string probs_path = scratch_file("born.probs");
    {
        auto out = io::open_output(probs_path);
        io::write_probs(out, p);
    }
    std::vector<Matrix> effects;
    for (int i = 0; i < sic.size(); ++i) effects.push_back(sic.effect(i));
    const std::string povm_path = scratch_file("sic.povm");
    {
        auto out = io::open_output(povm_path);
        io::write_povm(out, PovmMeasurement(effects));
    }

    const CliResult born = run_cli("born --sic " + sic_path + " --probs " + probs_path +
                                   " --povm " + povm_path);
    REQUIRE(born.status == 0);
    std::istringstream vals(report_value(born.out, "born"));
    for (int i = 0; i < 4; ++i) {
        double v = 0.0;
        vals >> v;
        REQUIRE(v == Catch::Approx(p(i)).margin(1e-12));
    }
    REQUIRE(report_double(born.out, "born_sum") == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("geometry subcommand separates consistent and violating files") {
    const std::string a = scratch_file("ea.probs");
    const std::string b = scratch_file("eb.probs");
    {
        auto out = io::open_output(a);
        io::write_probs(out, basis_distribution(2, 0));
    }
    {
        auto out = io::open_output(b);
        io::write_probs(out, basis_distribution(2, 1));
    }
    const CliResult ok = run_cli("geometry --probs " + a + " --probs " + b);
    REQUIRE(ok.status == 0);
    REQUIRE(report_value(ok.out, "consistent") == "true");

    const std::string v0 = scratch_file("v0.probs");
    const std::string v1 = scratch_file("v1.probs");
    {
        auto out = io::open_output(v0);
        RealVector v = RealVector::Zero(4);
        v(0) = 1.0;
        io::write_probs(out, v);
    }
    {
        auto out = io::open_output(v1);
        RealVector v = RealVector::Zero(4);
        v(1) = 1.0;
        io::write_probs(out, v);
    }
    const CliResult bad = run_cli("geometry --probs " + v0 + " --probs " + v1);
    REQUIRE(bad.status == 1);
    REQUIRE(report_value(bad.out, "consistent") == "false");
    REQUIRE_FALSE(report_value(bad.out, "lower_violations").empty());
}

TEST_CASE("basis subcommand prints the sphere constants") {
    const CliResult res = run_cli("basis --dim 2");
    REQUIRE(res.status == 0);
    REQUIRE(report_double(res.out, "radius2") == 1.0 / 12.0);
    REQUIRE(report_double(res.out, "face_distance2_at_zero_bound") == 1.0 / 12.0);
    REQUIRE(report_value(res.out, "zero_bound") == "1");
}

TEST_CASE("distant-clique search through the tool") {
    const CliResult d4 = run_cli("search-distant --dim 4");
    REQUIRE(d4.status == 0);
    REQUIRE(report_value(d4.out, "max_clique_size") == "3");

    REQUIRE(run_cli("search-distant --dim 6").status == 3);
}

TEST_CASE("subspace search respects its budget switch") {
    const std::string sic_path = scratch_file("d4.sic");
    REQUIRE(run_cli("build-sic --dim 4 --seed 7 --sic " + sic_path).status == 0);

    const CliResult full = run_cli("search-subspace --sic " + sic_path + " --size 4");
    REQUIRE(full.status == 0);
    REQUIRE(report_value(full.out, "hits") == "0");

    REQUIRE(run_cli("search-subspace --sic " + sic_path + " --size 4 --budget 10").status == 3);
    REQUIRE(run_cli("search-subspace --sic " + sic_path + " --size 4 --budget 10 --exhaustive")
                .status == 0);
}

TEST_CASE("complement subcommand zeroes the chosen outcomes") {
    const std::string sic_path = scratch_file("d3-comp.sic");
    REQUIRE(run_cli("build-sic --dim 3 --sic " + sic_path).status == 0);
    const CliResult res = run_cli("complement --sic " + sic_path + " --indices 0,4");
    REQUIRE(res.status == 0);
    REQUIRE(report_double(res.out, "max_subset_probability") < 1e-12);
    REQUIRE(std::stoi(report_value(res.out, "zero_count")) >= 2);

    // {0,1,3} spans the full space, so no orthogonal state exists
    REQUIRE(run_cli("complement --sic " + sic_path + " --indices 0,1,3").status == 1);
    REQUIRE(run_cli("complement --sic " + sic_path + " --indices 0,x").status == 2);
}

TEST_CASE("single-claim reproduction passes and reports the insphere radius") {
    const CliResult res = run_cli("reproduce --claim d2-insphere");
    REQUIRE(res.status == 0);
    REQUIRE(report_value(res.out, "result") == "PASS");
}

TEST_CASE("usage and parse failures use their own exit codes") {
    REQUIRE(run_cli("reproduce --claim no-such-claim").status == 2);
    REQUIRE(run_cli("represent").status == 2);
    REQUIRE(run_cli("frobnicate").status == 2);

    const std::string junk = scratch_file("junk.sic");
    {
        std::ofstream out(junk);
        out << "hello world\n";
    }
    REQUIRE(run_cli("verify-sic --sic " + junk).status == 2);
}

TEST_CASE("identical invocations produce byte-identical output") {
    const CliResult a = run_cli("reproduce --claim d4-clique --format structured");
    const CliResult b = run_cli("reproduce --claim d4-clique --format structured");
    REQUIRE(a.status == 0);
    REQUIRE(a.out == b.out);
    REQUIRE(a.out.rfind("{", 0) == 0);

    const std::string p1 = scratch_file("det1.sic");
    const std::string p2 = scratch_file("det2.sic");
    const CliResult r1 = run_cli("build-sic --dim 4 --seed 3 --sic " + p1);
    const CliResult r2 = run_cli("build-sic --dim 4 --seed 3 --sic " + p2);
    REQUIRE(r1.status == 0);
    REQUIRE(r2.status == 0);
    // reports differ only in the output path; the files must match exactly
    REQUIRE(slurp(p1) == slurp(p2));
    REQUIRE(report_value(r1.out, "search.objective") ==
            report_value(r2.out, "search.objective"));
}

TEST_CASE("structured reports are valid nested json") {
    const CliResult res = run_cli("basis --dim 3 --format structured");
    REQUIRE(res.status == 0);
    REQUIRE(res.out.rfind("{", 0) == 0);
    REQUIRE(res.out.find("\"radius2\"") != std::string::npos);
}
