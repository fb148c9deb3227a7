#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using namespace patcalc;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& contents) {
    std::string path = "patcalc_cli_test_" + std::to_string(std::hash<std::string>{}(contents)) + ".txt";
    std::ofstream(path) << contents;
    return path;
}

}  // namespace

TEST_CASE("match") {
    auto r = run({"match", "(A x) y", "(A B) C"});
    CHECK(r.code == 0);
    CHECK(r.out == "{x:=B, y:=C}\n");
    auto n = run({"match", "(A x) x", "(A B) C"});
    CHECK(n.code == 1);
    CHECK(n.out == "no match\n");
}

TEST_CASE("head") {
    auto r = run({"head", "(\\x.x) A"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("A\n", 0) == 0);
    CHECK(r.out.find("HBeta") != std::string::npos);
    CHECK(run({"head", "x A"}).code == 1);
}

TEST_CASE("checkstd and standardise on a file") {
    std::string path = temp_file("(\\x.C) ((\\y.y) A)\n(\\x.C) A\nC\n");
    auto r = run({"checkstd", path});
    CHECK(r.code == 1);
    CHECK(r.out == "not standard\n");

    auto s = run({"standardise", path});
    CHECK(s.code == 0);
    CHECK(s.out.rfind("(\\x.C) ((\\y.y) A)\nC\nproof: (StdHead", 0) == 0);
    std::remove(path.c_str());

    auto inline_seq = run({"checkstd", "(\\x.x) A; A"});
    CHECK(inline_seq.code == 0);
}

TEST_CASE("standardise output passes checkstd") {
    auto s = run({"--json", "standardise", "(\\x.C) ((\\y.y) A); (\\x.C) A; C"});
    REQUIRE(s.code == 0);
    auto j = nlohmann::json::parse(s.out);
    std::string seq;
    for (const auto& t : j["terms"]) seq += (seq.empty() ? "" : "; ") + t.get<std::string>();
    CHECK(run({"checkstd", seq}).code == 0);
}

TEST_CASE("usage and parse errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"parse", "(A"}).code == 2);
    CHECK(run({"step", "(\\x.x) A", "Body"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"standardise", "A; B"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("other subcommands") {
    CHECK(run({"parse", "\\x.x"}).out == "\\x.x\n");
    auto j = nlohmann::json::parse(run({"--json", "parse", "A (\\x.x)"}).out);
    CHECK(j["data"] == true);
    CHECK(run({"step", "A ((\\x.x) B)"}).out == "Arg\tA B\n");
    CHECK(run({"phead", "(\\z.z) C", "--pattern", "A x"}).code == 0);
    CHECK(run({"devcheck", "(\\x.x) ((\\y.y) C)", "C"}).code == 0);
    CHECK(run({"devcheck", "(\\x.x) A", "B"}).code == 1);
    auto i = run({"intdevcheck", "A B ((\\y.y) C)", "A B C", "--pattern", "(A x) x"});
    CHECK(i.code == 0);
    CHECK(i.out.rfind("(PCDataNo3", 0) == 0);
    auto t = run({"trace", "(\\x.x x)(\\x.x x)", "--fuel", "3"});
    CHECK(t.out.find("fuel exhausted after 3 steps") != std::string::npos);
    auto e = run({"enumerate", "terms", "--max-size", "1", "--consts", "A", "--vars", "x"});
    CHECK(e.out == "x\nA\n");
    auto c = run({"enumerate", "chains", "--from", "(\\x.x) A", "--max-chain", "1"});
    CHECK(c.out == "[]\nroot\n");
}

TEST_CASE("verify on a small universe") {
    auto r = run({"--json", "verify", "--max-size", "3", "--max-chain", "2", "--workers", "1"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["results"].size() == 9);
}
