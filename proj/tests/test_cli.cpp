#include "qhtk/cli.hpp"

#include "doctest.h"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = qhtk::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// temp fixture files under the build/test working directory
std::string write_fixture(const std::string& name, const std::string& body) {
    std::string path = "cli_fixture_" + name;
    std::ofstream f(path, std::ios::binary);
    f << body;
    return path;
}

const char* kQuadEmbedding = R"({
  "format": [2, 2, 2],
  "entries": { "000": "1", "011": "1", "101": "1", "110": "1", "111": "0" }
})";

const char* kLatticeA2 = R"({
  "n": 2,
  "gram": [[-2, 1], [1, -2]],
  "spheres": [[1, 0], [0, 1]]
})";

const char* kComplexRp2 = R"({
  "coeff": "Z",
  "dims": [1, 1, 1],
  "boundaries": [ [[0]], [[2]] ]
})";

const char* kFiltered = R"({
  "coeff": "Z2",
  "dims": [2, 2],
  "boundaries": [ [[1, 1], [0, 1]] ],
  "levels": [[0, 1], [0, 1]]
})";

}  // namespace

TEST_CASE("hyperdet both methods agree and report the check") {
    std::string path = write_fixture("quad.json", kQuadEmbedding);
    auto r = run({"hyperdet", "--input", path, "--method", "both"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["value"] == "4");
    CHECK(j["result"]["formula"] == "4");
    CHECK(j["result"]["schlafli"] == "4");
    bool found = false;
    for (const auto& c : j["checks"])
        if (c["name"] == "formula_vs_schlafli") {
            found = true;
            CHECK(c["status"] == "pass");
        }
    CHECK(found);
    std::remove(path.c_str());
}

TEST_CASE("missing input file exits 2") {
    auto r = run({"cobordism", "check", "--input", "definitely_missing.json"});
    CHECK(r.code == 2);
    CHECK(r.err.find("cannot open") != std::string::npos);
}

TEST_CASE("unknown subcommand exits 2 with usage") {
    auto r = run({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(!r.err.empty());
}

TEST_CASE("malformed JSON exits 2 with a location") {
    std::string path = write_fixture("bad.json", "{ not json");
    auto r = run({"homology", "--input", path});
    CHECK(r.code == 2);
    CHECK(r.err.find("malformed JSON") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("equivariant ki emits the homology table") {
    auto r = run({"equivariant", "ki", "--n", "4", "--i", "2"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    auto h = j["result"]["homology"];
    REQUIRE(h.size() == 5);
    CHECK(h[0]["pretty"] == "Z");
    CHECK(h[1]["pretty"] == "Z/2");
    CHECK(h[2]["pretty"] == "Z/2");
    CHECK(h[3]["pretty"] == "0");
    CHECK(h[4]["pretty"] == "Z");
    CHECK(j["result"]["orientable"] == true);
}

TEST_CASE("homology command with pretty rendering") {
    std::string path = write_fixture("rp2.json", kComplexRp2);
    auto r = run({"--pretty", "homology", "--input", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("H_1 = Z/2") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cobordism surgery runs the full report") {
    auto r = run({"cobordism", "surgery", "--sigma", "1", "--alpha", "2"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["report"]["common_discriminant"] == "1");
    CHECK(j["result"]["report"]["square_root"] == "1");
    // the report names the statement each check corresponds to
    std::vector<std::string> want = {"thmB.equal", "thmB.square", "thmB.mu_iij_zero",
                                     "thmB.mu_iie_zero", "disc.integral", "ring.disc"};
    for (const auto& name : want) {
        bool found = false;
        for (const auto& c : j["checks"])
            if (c["name"] == name) found = true;
        CHECK_MESSAGE(found, "missing check ", name);
    }
}

TEST_CASE("specseq verify on the acyclic two-generator example") {
    std::string path = write_fixture("filt.json", kFiltered);
    auto r = run({"specseq", "--input", path, "--verify"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["collapse_at"] == 1);
    CHECK(j["result"]["convergence"]["consistent"] == true);
    std::remove(path.c_str());
}

TEST_CASE("pl solve and pl twist on the A2 lattice") {
    std::string path = write_fixture("a2.json", kLatticeA2);
    auto r = run({"pl", "solve", "--input", path});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["solution_dim"] == 1);

    auto t = run({"pl", "twist", "--input", path, "--sphere", "0"});
    REQUIRE(t.code == 0);
    auto jt = nlohmann::json::parse(t.out);
    for (const auto& c : jt["checks"]) CHECK(c["status"] == "pass");
    std::remove(path.c_str());
}

TEST_CASE("form even") {
    std::string path = write_fixture("form.json", R"({"matrix": [[0,1],[1,0]]})");
    auto r = run({"form", "even", "--input", path});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["even"] == true);
    std::remove(path.c_str());
}

TEST_CASE("ring disc subcommand") {
    std::string path = write_fixture(
        "ring.json",
        R"({"rank": 2, "unit": 0, "labels": ["e","x"],
            "mu": {"format":[2,2,2],
                   "entries": {"000":"1","011":"1","101":"1","110":"1"}}})");
    auto r = run({"ring", "disc", "--input", path, "--assoc"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["kind"] == "value");
    CHECK(j["result"]["value"] == "4");
    std::remove(path.c_str());
}

TEST_CASE("reports are byte-identical across reruns") {
    std::string quad = write_fixture("det.json", kQuadEmbedding);
    std::string a2 = write_fixture("l.json", kLatticeA2);
    std::string rp2 = write_fixture("c.json", kComplexRp2);
    std::string filt = write_fixture("f.json", kFiltered);
    std::string form = write_fixture("q.json", R"({"matrix": [[2,1],[1,-4]]})");
    std::vector<std::vector<std::string>> cases = {
        {"hyperdet", "--input", quad, "--method", "both"},
        {"homology", "--input", rp2},
        {"equivariant", "ki", "--n", "4", "--i", "2"},
        {"specseq", "--input", filt, "--verify"},
        {"pl", "solve", "--input", a2},
        {"pl", "twist", "--input", a2, "--sphere", "1"},
        {"cobordism", "surgery", "--sigma", "2", "--alpha", "-3"},
        {"form", "even", "--input", form},
    };
    for (const auto& args : cases) {
        auto r1 = run(args);
        auto r2 = run(args);
        CHECK(r1.code == r2.code);
        CHECK(r1.out == r2.out);
    }
    std::remove(quad.c_str());
    std::remove(a2.c_str());
    std::remove(rp2.c_str());
    std::remove(filt.c_str());
    std::remove(form.c_str());
}
