#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "aia/io.hh"
#include "aia/refine.hh"
#include "cli.hh"
#include "generators.hh"

using namespace aia;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(const std::string& file) {
    return std::string(AIA_CORPUS_DIR) + "/" + file;
}

fs::path scratch(const std::string& name) {
    const char* base = std::getenv("AIA_TMPDIR");
    fs::path dir = fs::path(base ? base : fs::temp_directory_path().string()) / "cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("member reports the three-way status", "[cli]") {
    Result r = run({"member", corpus("sB.aia"), "--trace", "?on ?b !t"});
    CHECK(r.code == 0);
    CHECK(r.out == "Forbidden\n");

    r = run({"member", corpus("sB.aia"), "--trace", "?on ?b !t+m"});
    CHECK(r.out == "Allowed\n");
    r = run({"member", corpus("sB.aia"), "--trace", "?on ?b !t+m ?a"});
    CHECK(r.out == "Underspecified\n");
    r = run({"member", corpus("vending_good.ia"), "--trace", "?on ?a !c"});
    CHECK(r.out == "member\n");
    r = run({"member", corpus("vending_good.ia"), "--trace", "?on !c"});
    CHECK(r.out == "non-member\n");

    r = run({"--json", "member", corpus("sB.aia"), "--trace", "?on ?b !t"});
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "Forbidden");

    r = run({"member", corpus("sB.aia"), "--trace", "?on ?zz"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("refine prints the counterexample and exits 1", "[cli]") {
    Result r = run({"refine", corpus("vending_tfault.ia"), corpus("sB.aia")});
    CHECK(r.code == 1);
    CHECK(r.out == "FAIL ?on ?b !t\n");

    r = run({"refine", corpus("vending_good.ia"), corpus("sB.aia")});
    CHECK(r.code == 0);
    CHECK(r.out == "PASS\n");

    r = run({"--json", "refine", corpus("vending_notake.ia"), corpus("sB.aia")});
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "FAIL");
    CHECK(j["witness"] == "?on ?a !c ~take");
    CHECK(j["stats"]["explored_pairs"].get<int>() > 0);

    r = run({"refine", corpus("r.ia"), corpus("q.ia")});
    CHECK(r.code == 1);
    CHECK(r.out == "FAIL ?b !c+m\n");
}

TEST_CASE("the tester of a singular spec passes the good machine", "[cli]") {
    const fs::path dir = scratch("sc");
    const std::string tester = (dir / "tester_sC.ia").string();
    REQUIRE(run({"tester", corpus("sC.aia"), "-o", tester}).code == 0);
    CHECK(run({"check", "--tester", tester}).code == 0);

    Result r = run({"run", tester, corpus("vending_good.ia"), "--exhaustive"});
    CHECK(r.code == 0);
    CHECK(r.out == "PASS\n");

    r = run({"run", tester, corpus("vending_tfault.ia"), "--exhaustive"});
    CHECK(r.code == 1);
    CHECK(r.out == "FAIL ?on ?a !c ?take ?b !t\n");
    r = run({"--json", "run", tester, corpus("vending_good.ia"), "--exhaustive"});
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "PASS");
}

TEST_CASE("refine agrees with exhaustive runs on the corpus", "[cli]") {
    const fs::path dir = scratch("agree");
    std::vector<std::string> specs;
    std::vector<std::string> impls;
    for (const auto& entry : fs::directory_iterator(AIA_CORPUS_DIR)) {
        const std::string path = entry.path().string();
        specs.push_back(path);
        if (std::holds_alternative<InterfaceAutomaton>(load_model(path))) {
            impls.push_back(path);
        }
    }
    std::sort(specs.begin(), specs.end());
    std::sort(impls.begin(), impls.end());
    auto alphabet_of = [](const std::string& path) {
        return std::visit([](const auto& m) { return m.alphabet(); }, load_model(path));
    };

    int compared = 0;
    int failing = 0;
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const std::string tester = (dir / ("tester" + std::to_string(k) + ".ia")).string();
        REQUIRE(run({"tester", specs[k], "-o", tester}).code == 0);
        for (const std::string& impl : impls) {
            if (!(alphabet_of(impl) == alphabet_of(specs[k]))) {
                continue;
            }
            const Result refine = run({"refine", impl, specs[k]});
            const Result exec = run({"run", tester, impl, "--exhaustive"});
            INFO(impl << " against " << specs[k]);
            REQUIRE(refine.code != 2);
            CHECK(refine.code == exec.code);
            ++compared;
            failing += refine.code == 1;
        }
    }
    CHECK(compared >= 20);
    CHECK(failing > 0);
    CHECK(failing < compared);
}

TEST_CASE("translations and compositions write loadable models", "[cli]") {
    const fs::path dir = scratch("translate");
    const std::string ia = (dir / "sB.ia").string();
    const std::string back = (dir / "sB.aia").string();
    REQUIRE(run({"to-ia", corpus("sB.aia"), "-o", ia}).code == 0);
    REQUIRE(run({"to-aia", ia, "-o", back}).code == 0);
    CHECK(equiv(parse_aia(read_file(back)), parse_aia(read_file(corpus("sB.aia")))));

    const std::string both = (dir / "both.aia").string();
    REQUIRE(run({"compose", "--and", corpus("sB.aia"), corpus("sC.aia"), "-o", both}).code == 0);
    CHECK(equiv(parse_aia(read_file(both)), parse_aia(read_file(corpus("sB.aia")))));
    const std::string either = (dir / "either.aia").string();
    REQUIRE(run({"compose", "--or", corpus("sB.aia"), corpus("sC.aia"), "-o", either}).code == 0);
    CHECK(equiv(parse_aia(read_file(either)), parse_aia(read_file(corpus("sC.aia")))));
    CHECK(run({"compose", corpus("sB.aia"), corpus("sC.aia")}).code == 2);
    CHECK(run({"compose", "--and", "--or", corpus("sB.aia"), corpus("sC.aia")}).code == 2);

    Result r = run({"det", corpus("sB.aia")});
    CHECK(r.code == 0);
    CHECK(parse_aia(r.out).num_states() == 5);

    r = run({"dot", corpus("sA.aia")});
    CHECK(r.out.rfind("digraph", 0) == 0);
    const std::string tester = (dir / "t.ia").string();
    REQUIRE(run({"tester", corpus("sB.aia"), "-o", tester}).code == 0);
    r = run({"dot", tester});
    CHECK(r.out.find("doublecircle") != std::string::npos);
}

TEST_CASE("testgen output is reproducible", "[cli]") {
    const fs::path a = scratch("gen_a");
    const fs::path b = scratch("gen_b");
    const std::vector<std::string> common = {"testgen", corpus("sB.aia"), "--seed", "7",
                                             "--depth", "5", "--p-stop", "0.2", "--count", "4"};
    auto with_dir = [&](const fs::path& dir) {
        std::vector<std::string> args = common;
        args.push_back("-o");
        args.push_back(dir.string());
        return run(args);
    };
    REQUIRE(with_dir(a).code == 0);
    REQUIRE(with_dir(b).code == 0);
    for (int k = 0; k < 4; ++k) {
        for (const std::string file : {"singular_00" + std::to_string(k) + ".aia",
                                       "tester_00" + std::to_string(k) + ".ia"}) {
            CHECK(read_file((a / file).string()) == read_file((b / file).string()));
        }
        const std::string tester = (a / ("tester_00" + std::to_string(k) + ".ia")).string();
        CHECK(run({"run", tester, corpus("vending_good.ia"), "--exhaustive"}).code == 0);
    }
    CHECK(run({"testgen", corpus("sB.aia"), "--p-stop", "2", "-o", a.string()}).code == 2);
}

TEST_CASE("random runs are ordered by run index", "[cli]") {
    const fs::path dir = scratch("runs");
    const std::string tester = (dir / "t.ia").string();
    REQUIRE(run({"tester", corpus("sB.aia"), "-o", tester}).code == 0);
    const std::vector<std::string> base = {"run",    tester, corpus("vending_tfault.ia"),
                                           "--seed", "11",   "--runs",
                                           "16",     "--max-steps", "40", "--log"};
    auto with_jobs = [&](const char* jobs) {
        std::vector<std::string> args = base;
        args.push_back("--jobs");
        args.push_back(jobs);
        return run(args);
    };
    const Result serial = with_jobs("1");
    const Result parallel = with_jobs("4");
    CHECK(serial.code == 1);
    CHECK(serial.out == parallel.out);
    CHECK(serial.out.rfind("# run 0 seed 11\n", 0) == 0);
    CHECK(serial.out.find("# run 15 seed 26\n") != std::string::npos);

    const Result j = run({"--json", "run", tester, corpus("vending_good.ia"), "--runs", "5"});
    CHECK(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["stats"]["runs"] == 5);
    CHECK(run({"run", tester, corpus("vending_good.ia"), "--exhaustive", "--seed", "1"}).code == 2);
    CHECK(run({"run", corpus("sB.aia"), corpus("vending_good.ia"), "--exhaustive"}).code == 2);
}

TEST_CASE("exit codes for usage, input and resource errors", "[cli]") {
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"check", corpus("missing.aia")}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);

    const fs::path dir = scratch("errors");
    const std::string bad = (dir / "bad.aia").string();
    write_file(bad, "aia bad\ninputs a\noutputs x\ninit q0\nq0 ?a -> F\n");
    Result r = run({"check", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("bad.aia:5:") != std::string::npos);

    r = run({"--cap", "2", "det", corpus("sB.aia")});
    CHECK(r.code == 3);
    CHECK(r.err.find("cap") != std::string::npos);
    CHECK(run({"--cap", "2", "refine", corpus("vending_good.ia"), corpus("sB.aia")}).code == 3);

    r = run({"check", corpus("sB.aia")});
    CHECK(r.code == 0);
    CHECK(r.out == "ok: aia sB, 11 states, 4 inputs, 4 outputs\n");
}
