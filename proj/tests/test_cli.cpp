#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "unitsecant/cli.hpp"
#include "unitsecant/oracle.hpp"
#include "unitsecant/report.hpp"

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "unitsecant");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = unitsecant::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string temp_path(const char* name) {
    return std::string(UNITSECANT_TEST_TMP) + "/" + name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify exit codes") {
    auto r = run({"classify", "x=cos(t); y=sin(t)", "--at", "0", "--format", "machine"});
    CHECK(r.code == 0);
    const auto record = unitsecant::parse_machine(lines(r.out).at(0));
    CHECK(record.verdict == "Tangent");
    CHECK(std::abs(*record.dirx) <= 1e-6);
    CHECK(*record.diry == doctest::Approx(1.0));

    CHECK(run({"classify", "f=abs(t)", "--at", "0"}).code == 1);
    CHECK(run({"classify", "x=1; y=1", "--at", "0"}).code == 2);
    CHECK(run({"classify", "f=t*sin(1/(t + (1 - sign(t)^2)))", "--at", "0"}).code == 2);
    CHECK(run({"classify", "f=t +", "--at", "0"}).code == 64);
    CHECK(run({"classify", "f=t"}).code == 64);
    CHECK(run({"classify", "f=ln(t)", "--at", "-1"}).code == 64);
    CHECK(run({"classify", "f=t", "--at", "0", "--rho", "2"}).code == 64);
    CHECK(run({"classify", "f=t", "--at", "0", "--format", "xml"}).code == 64);
    CHECK(run({}).code == 64);
    CHECK(run({"frobnicate"}).code == 64);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("human classify output for graphs includes the extended derivative") {
    const auto r = run({"classify", "f=cbrt(t)", "--at", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("dy/dx:     PlusInfinity") != std::string::npos);
}

TEST_CASE("sweep") {
    auto r = run({"sweep", "x=cos(t); y=sin(t)", "--range", "0:6.28", "--n", "16", "--format", "machine"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).size() == 16);

    r = run({"sweep", "f=abs(t)", "--range=-1:1", "--n", "3"});
    CHECK(r.code == 1);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 4);
    int corners = 0;
    for (const auto& row : rows) corners += row.find("Corner") != std::string::npos;
    CHECK(corners == 1);

    CHECK(run({"sweep", "f=t", "--range", "0:1", "--n", "1"}).code == 64);
    CHECK(run({"sweep", "f=t", "--range", "1:0", "--n", "4"}).code == 64);
    CHECK(run({"sweep", "f=t", "--range", "0-1", "--n", "4"}).code == 64);
}

TEST_CASE("plot") {
    auto r = run({"plot", "x=cos(t); y=sin(t)", "--at", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("class=\"tangent\"") != std::string::npos);

    r = run({"plot", "f=abs(t)", "--at", "0", "--range=-1:1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("class=\"tangent\"") == std::string::npos);
    CHECK(r.out.find("corner: no tangent") != std::string::npos);

    CHECK(run({"plot", "f=sin(", "--at", "0"}).code == 64);
    CHECK(run({"plot", "f=t", "--at", "0", "--samples", "4"}).code == 64);
}

TEST_CASE("oracle") {
    auto r = run({"oracle"});
    CHECK(r.code == 0);

    r = run({"oracle", "--format", "machine"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).size() == unitsecant::builtin_corpus().size());

    CHECK(run({"oracle", "--collinear-tol", "1e-12"}).code == 1);
    CHECK(run({"oracle", "--corpus", UNITSECANT_DATA_DIR "/corpus.jsonl"}).code == 0);
    CHECK(run({"oracle", "--corpus", temp_path("missing.jsonl")}).code == 64);
}

TEST_CASE("machine output is byte identical across runs") {
    const std::vector<std::vector<std::string>> invocations = {
        {"oracle", "--format", "machine"},
        {"sweep", "x=cos(t); y=sin(t); z=t", "--range=-3:3", "--n", "25", "--format", "machine"},
        {"classify", "x=t^2; y=t^3", "--at", "0", "--format", "machine"},
        {"plot", "f=abs(t)", "--at", "0"},
    };
    for (const auto& args : invocations) {
        const auto a = run(args);
        const auto b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("config files and flag precedence") {
    const auto cfg = temp_path("unitsecant_test.cfg");
    {
        std::ofstream f(cfg);
        f << "# tighter than default\ncollinear_tol = 1e-12\nformat=machine\n";
    }
    CHECK(run({"oracle", "--config", cfg}).code == 1);
    CHECK(run({"oracle", "--config", cfg, "--collinear-tol", "1e-5"}).code == 0);
    const auto r = run({"classify", "f=t", "--at", "0", "--config", cfg, "--collinear-tol", "1e-5"});
    CHECK(r.out.rfind("{\"t0\"", 0) == 0);

    {
        std::ofstream f(cfg);
        f << "unknown_key = 3\n";
    }
    CHECK(run({"classify", "f=t", "--at", "0", "--config", cfg}).code == 64);
    {
        std::ofstream f(cfg);
        f << "h0 = abc\n";
    }
    CHECK(run({"classify", "f=t", "--at", "0", "--config", cfg}).code == 64);
    CHECK(run({"classify", "f=t", "--at", "0", "--config", temp_path("nope.cfg")}).code == 64);
    std::remove(cfg.c_str());
}

TEST_CASE("output file") {
    const auto path = temp_path("unitsecant_test_out.jsonl");
    const auto r = run({"corpus", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == unitsecant::corpus_to_jsonl(unitsecant::builtin_corpus()));
    std::remove(path.c_str());
}

}
