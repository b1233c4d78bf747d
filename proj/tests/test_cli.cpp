// Drives the hvgplane executable as a subprocess.

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const fs::path& workdir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "hvgplane_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Result run(const std::string& args) {
    const fs::path out = workdir() / "stdout.txt", err = workdir() / "stderr.txt";
    const std::string cmd = "cd '" + workdir().string() + "' && '" HVGPLANE_CLI_PATH "' " + args + " > '" +
                            out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

// Second CSV line, split on commas.
std::vector<std::string> record(const std::string& csv) {
    std::istringstream in(csv);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    std::vector<std::string> cells;
    std::stringstream ss(row);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    return cells;
}

}  // namespace

TEST_CASE("generate", "[cli]") {
    SECTION("schuster series with manifest") {
        const Result r = run("generate --system schuster --z 2.0 --n 100000 --seed 7 --out schuster.txt");
        REQUIRE(r.code == 0);
        CHECK(r.out.empty());
        CHECK(r.err.empty());
        CHECK(lines(slurp(workdir() / "schuster.txt")) == 100000);
        const std::string manifest = slurp(workdir() / "schuster.txt.json");
        CHECK(manifest.find("\"system\": \"schuster\"") != std::string::npos);
        CHECK(manifest.find("\"seed\": 7") != std::string::npos);
        CHECK(manifest.find("\"n\": 100000") != std::string::npos);
        CHECK(manifest.find("\"transient\": 100000") != std::string::npos);
    }
    SECTION("white Gaussian noise to standard output, byte-identical on rerun") {
        const Result a = run("generate --system fgn --hurst 0.5 --n 1000 --seed 1");
        const Result b = run("generate --system fgn --hurst 0.5 --n 1000 --seed 1");
        REQUIRE(a.code == 0);
        CHECK(lines(a.out) == 1000);
        CHECK(a.out == b.out);
    }
    SECTION("generic parameters") {
        const Result r = run("generate --system henon --param a=1.4 --param b=0.3 --coordinate 1 --n 50 --transient 10");
        CHECK(r.code == 0);
        CHECK(lines(r.out) == 50);
    }
    SECTION("bad hurst exponent") {
        const Result r = run("generate --system fgn --hurst 1.5 --n 100 --seed 1");
        CHECK(r.code == 2);
        CHECK(r.err == "error: hurst must be in (0,1)\n");
    }
    SECTION("other usage errors") {
        CHECK(run("generate --system powerlaw --k 1 --n 100").code == 2);  // no seed
        CHECK(run("generate --system nonsense --n 100").code == 2);
        CHECK(run("generate --system logistic --n 100 --bogus 3").code == 2);
        CHECK(run("").code == 2);
        CHECK(run("generate --system logistic --param r").code == 2);
    }
}

TEST_CASE("hvg", "[cli]") {
    REQUIRE(run("generate --system powerlaw --k 0 --n 500 --seed 3 --out w.txt").code == 0);
    const Result r = run("hvg --in w.txt --edges edges.txt --pdf pdf.txt");
    REQUIRE(r.code == 0);
    CHECK(lines(r.out) == 500);
    std::size_t degree_sum = 0;
    std::istringstream in(r.out);
    for (std::size_t d; in >> d;) degree_sum += d;
    CHECK(lines(slurp(workdir() / "edges.txt")) * 2 == degree_sum);
    CHECK(!slurp(workdir() / "pdf.txt").empty());
}

TEST_CASE("analyze", "[cli]") {
    SECTION("stored white noise") {
        REQUIRE(run("generate --system powerlaw --k 0 --n 100000 --seed 1 --out k0.txt").code == 0);
        const Result r = run("analyze --in k0.txt --class stochastic --dump-pdf k0_pdf.txt --out k0.json");
        REQUIRE(r.code == 0);
        const auto cells = record(r.out);
        REQUIRE(cells.size() == 13);
        const double lambda = std::stod(cells[2]);
        CHECK(lambda >= 0.39);
        CHECK(lambda <= 0.42);
        CHECK(fs::exists(workdir() / "k0_pdf.txt"));
        CHECK(slurp(workdir() / "k0.json").find("\"fisher\"") != std::string::npos);
    }
    SECTION("zone override on f^-1.75 noise") {
        const Result r = run("analyze --system powerlaw --k 1.75 --n 100000 --seed 1 --zone 7:12");
        REQUIRE(r.code == 0);
        const double lambda = std::stod(record(r.out)[2]);
        CHECK(lambda == Catch::Approx(0.966).margin(0.09));
    }
    SECTION("errors") {
        std::ofstream(workdir() / "one.txt") << "0.5\n";
        const Result r = run("analyze --in one.txt");
        CHECK(r.code == 2);
        CHECK(r.err == "error: series too short\n");
        std::ofstream(workdir() / "junk.txt") << "0.5\nabc\n";
        CHECK(run("analyze --in junk.txt").code == 2);
        CHECK(run("analyze --in missing.txt").code == 1);
        CHECK(run("analyze --in k0.txt --zone 9").code == 2);
        CHECK(run("analyze --in k0.txt --class noisy").code == 2);
    }
}

TEST_CASE("battery and plane", "[cli]") {
    const std::string config = HVGPLANE_CONFIG_DIR "/table1.json";
    const Result r = run("battery --config '" + config + "' --out t1 --workers 2");
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const std::string csv = slurp(workdir() / "t1" / "battery.csv");
    CHECK(lines(csv) >= 9);  // header plus eight or more rows

    // idempotent across worker counts
    REQUIRE(run("battery --config '" + config + "' --out t1b --workers 1").code == 0);
    CHECK(slurp(workdir() / "t1b" / "battery.csv") == csv);

    const Result p = run("plane --in t1/battery.csv --out plane.csv");
    REQUIRE(p.code == 0);
    const std::string plane = slurp(workdir() / "plane.csv");
    CHECK(plane.rfind("label,class,s_rel_wgn,fisher\n", 0) == 0);
    CHECK(lines(plane) == lines(csv));

    CHECK(run("battery --config missing.json").code == 2);
    CHECK(run("battery").code == 2);
    std::ofstream(workdir() / "noseed.json") << R"({"systems": [{"system": "fgn", "params": {"hurst": 0.5}}]})";
    CHECK(run("battery --config noseed.json").code == 2);
    std::ofstream(workdir() / "partial.json")
        << R"({"systems": [{"system": "logistic", "params": {"r": 4.5}}, {"system": "logistic"}],
              "lengths": [1000], "transient": 10, "wgn_reference": {"replicates": 1}})";
    const Result partial = run("battery --config partial.json --out partial");
    CHECK(partial.code == 1);
    CHECK(lines(slurp(workdir() / "partial" / "battery.csv")) == 3);
}

TEST_CASE("stability", "[cli]") {
    const Result r = run("stability --system powerlaw --k 0 --lengths 2000,4000 --replicates 3 --seed 5");
    REQUIRE(r.code == 0);
    CHECK(lines(r.out) == 3);
    CHECK(r.out.rfind("label,n,replicates,", 0) == 0);
    CHECK(run("stability --system powerlaw --k 0 --lengths 2000 --replicates 3").code == 2);
}
