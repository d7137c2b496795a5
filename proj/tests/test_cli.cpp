#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coarse/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "coarsetk");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = coarse::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "coarsetk-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("ends of the line") {
    auto r = run({"ends", "--space", "grid:1:12", "--scale", "1", "--radii", "2,4,6"});
    CHECK(r.code == 0);
    auto j = r.json();
    CHECK(j["tool"] == "coarsetk");
    CHECK(j["config"]["command"] == "ends");
    CHECK(j["result"]["classification"] == "2");
}

TEST_CASE("bottleneck failure exits 2") {
    auto r = run({"bottleneck", "--space", "grid:2:7", "--delta-max", "3"});
    CHECK(r.code == 2);
    CHECK(r.json()["result"]["verdict"] == "fails");
}

TEST_CASE("products audit on a simplex") {
    auto r = run({"products-audit", "--space", "simplex:3", "--trials", "100", "--ring", "Z"});
    CHECK(r.code == 0);
    CHECK(r.json()["result"]["all_pass"] == true);
}

TEST_CASE("corpus listing and description") {
    auto list = run({"corpus", "list"});
    CHECK(list.code == 0);
    std::vector<std::string> names;
    const auto doc = list.json();
    for (const auto& f : doc["result"]["families"]) names.push_back(f["name"].get<std::string>());
    for (const char* want : {"grid", "free", "tree", "cyclic", "matrix", "edges", "chaincx"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
    auto grid = run({"corpus", "describe", "grid"});
    CHECK(grid.json()["result"]["doc"].get<std::string>().find("Chebyshev") != std::string::npos);
    auto bad = run({"corpus", "describe", "nope"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("ConfigError") != std::string::npos);
}

TEST_CASE("errors exit 1 with a one-line message") {
    for (auto args : std::vector<std::vector<std::string>>{
             {"homology", "--space", "warp:3"},
             {"homology", "--space", "grid:1:3", "--ring", "Fp:4"},
             {"cohomology-scan", "--space", "grid:1:8", "--radii", "4,6"},
             {"homology", "--space", "matrix:/does/not/exist.csv"},
             {"homology", "--bogus-flag"},
             {"frobnicate"},
         }) {
        auto r = run(args);
        INFO(args[0] << " " << r.err);
        CHECK(r.code == 1);
        CHECK(r.out.empty());
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
        CHECK(r.err.rfind("error: ", 0) == 0);
    }
}

TEST_CASE("help and version") {
    CHECK(run({"--help"}).code == 0);
    auto v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("same seed, byte-identical JSON") {
    std::vector<std::vector<std::string>> commands{
        {"homology", "--space", "grid:2:3", "--radius", "2", "--reduced"},
        {"cohomology-scan", "--space", "grid:1:14", "--k", "1", "--radii", "6,8,10,12", "--collar", "2"},
        {"ends", "--space", "free:2:4", "--radii", "1,2,3"},
        {"bottleneck", "--space", "grid:2:5", "--pairs", "50", "--seed", "9"},
        {"acyclicity", "--space", "grid:2:5", "--scales", "1,2", "--radii", "2,3"},
        {"products-audit", "--space", "grid:2:2", "--trials", "40", "--seed", "3"},
        {"ccd", "--space", "grid:2:8", "--radii", "4,5,6", "--collar", "2"},
        {"pd-probe", "--space", "grid:1:14", "--n", "1", "--radii", "6,8,10", "--collar", "2"},
        {"uct", "--space", "grid:2:2", "--radius", "2"},
    };
    for (const auto& c : commands) {
        auto a = run(c), b = run(c);
        INFO(c[0]);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("report and table files") {
    auto json = scratch("scan.json"), csv = scratch("scan.csv");
    auto r = run({"cohomology-scan", "--space", "grid:1:14", "--k", "1", "--radii", "6,8,10,12", "--collar", "2", "--json",
                  json.string(), "--csv", csv.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict: stable") != std::string::npos);
    auto doc = nlohmann::json::parse(slurp(json));
    CHECK(doc["result"]["verdict"] == "stable");
    CHECK(doc["config"]["time_budget_seconds"] == 0);
    auto table = slurp(csv);
    CHECK(table.rfind("stage,scale,radius,collar,k,rank,torsion\n", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 5);
    auto unwritable = run({"ends", "--space", "grid:1:6", "--radii", "2", "--json", "/no/such/dir/x.json"});
    CHECK(unwritable.code == 1);
    CHECK(unwritable.err.find("IOFailure") != std::string::npos);
}

TEST_CASE("timing goes to stderr only") {
    auto plain = run({"homology", "--space", "grid:1:4"});
    auto timed = run({"homology", "--space", "grid:1:4", "--timing"});
    CHECK(plain.out == timed.out);
    CHECK(timed.err.find("elapsed_seconds") != std::string::npos);
}

TEST_CASE("homology of a direct chain complex file") {
    auto path = scratch("double.json");
    std::ofstream(path) << R"({"dims":[1,1],"boundaries":[{"dim":1,"entries":[[0,0,2]]}]})";
    auto r = run({"homology", "--space", "chaincx:" + path.string()});
    CHECK(r.code == 0);
    auto groups = r.json()["result"]["groups"];
    CHECK(groups[0]["free_rank"] == 0);
    CHECK(groups[0]["torsion"] == nlohmann::json::array({2}));
    auto uct = run({"uct", "--space", "chaincx:" + path.string(), "--primes", "2,3"});
    CHECK(uct.code == 0);
    CHECK(uct.json()["result"]["all_pass"] == true);
}

TEST_CASE("matrix and edge list inputs") {
    auto csv = scratch("square.csv");
    std::ofstream(csv) << "a,b,c,d\n0,1,2,1\n1,0,1,2\n2,1,0,1\n1,2,1,0\n";
    auto r = run({"homology", "--space", "matrix:" + csv.string(), "--max-dim", "2"});
    CHECK(r.code == 0);
    CHECK(r.json()["result"]["groups"][1]["free_rank"] == 1);
    auto edges = scratch("square.edges");
    std::ofstream(edges) << "a b\nb c\nc d\nd a\n";
    auto e = run({"bottleneck", "--space", "edges:" + edges.string(), "--delta-max", "1"});
    CHECK(e.code == 0);
    auto not_graph = run({"bottleneck", "--space", "matrix:" + csv.string()});
    CHECK(not_graph.code == 1);
    CHECK(not_graph.err.find("NotAGraphMetric") != std::string::npos);
}

TEST_CASE("pd-probe on a free group is a negative verdict") {
    auto r = run({"pd-probe", "--space", "free:2:6", "--n", "1", "--radii", "3,4,5", "--collar", "2"});
    CHECK(r.code == 2);
    CHECK(r.json()["result"]["verdict"] == "not consistent");
}

TEST_CASE("schedule arguments are checked") {
    CHECK(run({"cohomology-scan", "--space", "grid:1:14", "--radii", "6,8,10", "--scales", "1,2"}).code == 1);
    CHECK(run({"cohomology-scan", "--space", "grid:1:14", "--radii", "6,8,10", "--collars", "2,2"}).code == 1);
    CHECK(run({"cohomology-scan", "--space", "grid:1:14", "--radii", "6,x,10"}).code == 1);
    CHECK(run({"ccd", "--space", "grid:1:14"}).code == 1);
}
