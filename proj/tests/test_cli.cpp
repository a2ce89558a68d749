#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <doctest.h>
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = MUNICLUST_CLI_PATH;

fs::path work_dir() {
    const auto dir = fs::temp_directory_path() / "municlust_cli_test";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("synth then ingest --check round trips with exit 0") {
    const auto csv = work_dir() / "data.csv";
    REQUIRE(run("synth --seed 7 --n 40 --k 3 --out " + csv.string()) == 0);
    CHECK(run("ingest --input " + csv.string() + " --check") == 0);
}

TEST_CASE("input validation failures exit with code 2") {
    CHECK(run("ingest --input /nonexistent/file.csv --check") == 2);
    CHECK(run("cluster --input whatever.csv --metric bogus --seed 1") == 2);
    CHECK(run("definitely-not-a-subcommand") == 2);
}

TEST_CASE("numeric failures exit with code 3") {
    // A constant column defeats standardization.
    const auto csv = work_dir() / "flat.csv";
    std::ofstream out(csv);
    out << "NAME,MHR,POPULATION,DEMOGDENSITY,IDEB2005,IDEB2007,IDEB2009,IDEB2011,IDEB2013,"
           "LIFEEXPECT,GINI,INRICHEST10,EDUCLEVEL,MHDI,MHDIE,MHDIL,MHDII\n"
           "A,1,100,2,3,3,3,3,3,70,0.5,40,50,0.7,0.6,0.8,0.7\n"
           "B,2,200,3,3,3,3,3,3,71,0.6,41,51,0.71,0.61,0.81,0.71\n"
           "C,3,300,4,3,3,3,3,3,72,0.7,42,52,0.72,0.62,0.82,0.72\n";
    out.close();
    CHECK(run("cluster --input " + csv.string() + " --algo kmeans --k 2 --seed 1") == 3);
}

TEST_CASE("cluster runs are byte-identical for a fixed seed") {
    const auto csv = work_dir() / "data2.csv";
    REQUIRE(run("synth --seed 19 --n 30 --k 2 --out " + csv.string()) == 0);
    const auto r1 = work_dir() / "run1.json";
    const auto r2 = work_dir() / "run2.json";
    const std::string base = "cluster --input " + csv.string() +
                             " --algo kmeans --k 2 --seed 5 --restarts 5 --out ";
    REQUIRE(run(base + r1.string()) == 0);
    REQUIRE(run(base + r2.string()) == 0);
    auto a = json::parse(slurp(r1));
    auto b = json::parse(slurp(r2));
    a.erase("timing");
    b.erase("timing");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("validate, correlate, regress and report subcommands") {
    const auto csv = work_dir() / "data3.csv";
    REQUIRE(run("synth --seed 23 --n 40 --k 3 --out " + csv.string()) == 0);

    CHECK(run("correlate --input " + csv.string() + " --target MHR") == 0);
    CHECK(run("regress --input " + csv.string() + " --x POPULATION --y MHR") == 0);

    const auto report = work_dir() / "validate.json";
    CHECK(run("validate --input " + csv.string() +
              " --k-min 1 --k-max 4 --gap-b 5 --seed 3 --restarts 5 --out " +
              report.string()) == 0);
    const auto doc = json::parse(slurp(report));
    CHECK(doc["validation"]["k_values"].size() == 4);

    const auto outdir = work_dir() / "artifacts";
    CHECK(run("report --run " + report.string() + " --format csv --out " + outdir.string()) == 0);
    CHECK(fs::exists(outdir / "validation.csv"));
    CHECK(run("report --run " + report.string() + " --format svg --out " + outdir.string()) == 0);
    CHECK(fs::exists(outdir / "validation_curves.svg"));
}

TEST_CASE("dbscan through the CLI labels everything noise at tiny eps") {
    const auto csv = work_dir() / "data4.csv";
    REQUIRE(run("synth --seed 29 --n 20 --k 2 --out " + csv.string()) == 0);
    const auto out = work_dir() / "dbscan.json";
    REQUIRE(run("cluster --input " + csv.string() +
                " --algo dbscan --eps 0.000001 --min-pts 2 --seed 1 --out " + out.string()) == 0);
    const auto doc = json::parse(slurp(out));
    CHECK(doc["clustering"]["noise_count"].get<int>() == 20);
    CHECK_FALSE(doc["validation"]["applicable"].get<bool>());
}
