#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mueller/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = mueller::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli catalog") {
    const Result r = run({"catalog"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.size() == 60);
    int r3 = 0;
    for (const auto& e : j) {
        if (e["id"] == "K5P") {
            CHECK(e["paper_anchor"] == "(B3.12c)");
            CHECK(e["closure"] == "null-product");
        }
        if (e["id"].get<std::string>().rfind("R3_", 0) == 0) ++r3;
        CHECK(e.contains("block_formula"));
        CHECK(e.contains("free_scalars"));
        CHECK(e.contains("claimed_rank"));
    }
    CHECK(r3 == 16);
}

TEST_CASE("cli classify: documents and errors") {
    const std::string eye = R"({"g":[1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,1],"label":"eye"})";
    const Result ok = run({"classify", "-"}, eye);
    REQUIRE(ok.code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["rank"] == 4);
    CHECK(j["det"] == 1.0);
    CHECK(j["label"] == "eye");

    const Result short_doc = run({"classify", "-"}, R"({"g":[1,2,3,4,5,6,7,8,9,10,11,12,13,14,15]})");
    CHECK(short_doc.code == 2);
    CHECK(short_doc.err.find("15") != std::string::npos);

    CHECK(run({"classify", "-"}, "{\"g\": [1, 2").code == 2);
    CHECK(run({"classify", "-"}, "[]").code == 2);
    CHECK(run({"classify", "-"}, R"({"g":[1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,"x"]})").code == 2);
    CHECK(run({"classify", "/nonexistent/file.json"}).code == 2);
    CHECK(run({"classify", "-", "--tol", "-1"}, eye).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("cli generate") {
    const Result id = run({"generate", "--family", "KM1", "--k", "1,0,0,0", "--m", "1,0,0,0"});
    REQUIRE(id.code == 0);
    const auto j = nlohmann::json::parse(id.out);
    const std::vector<double> eye{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    CHECK(j["g"].get<std::vector<double>>() == eye);
    CHECK(j["family"] == "KM1");
    CHECK(j["params"]["k"].get<std::vector<double>>() == std::vector<double>{1, 0, 0, 0});

    const Result a = run({"generate", "--family", "K5P", "--A", "2", "--seed", "7"});
    const Result b = run({"generate", "--family", "K5P", "--A", "2", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out)["scalars"]["A"] == 2.0);
    CHECK(run({"generate", "--family", "K5P", "--A", "2", "--seed", "8"}).out != a.out);

    const Result unknown = run({"generate", "--family", "Q9"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("NLM1") != std::string::npos);
    CHECK(run({"generate", "--family", "K5P", "--A", "0"}).code == 2);
    CHECK(run({"generate", "--family", "K5P", "--D", "1"}).code == 2);
    CHECK(run({"generate", "--family", "K1", "--m", "1,0,0,0"}).code == 2);
    CHECK(run({"generate", "--family", "K1", "--k", "1,0,0"}).code == 2);
    CHECK(run({"generate"}).code == 2);
}

TEST_CASE("cli generate then classify, every family") {
    const auto cat = nlohmann::json::parse(run({"catalog"}).out);
    for (const auto& e : cat) {
        const std::string fam = e["id"];
        CAPTURE(fam);
        const Result g = run({"generate", "--family", fam, "--seed", "5"});
        REQUIRE(g.code == 0);
        const Result c = run({"classify", "-"}, g.out);
        REQUIRE(c.code == 0);
        bool found = false;
        const auto doc = nlohmann::json::parse(c.out);
        for (const auto& m : doc["matches"]) found = found || m["family"] == fam;
        CHECK(found);
    }
    const Result k6 = run({"generate", "--family", "K6", "--A", "1", "--t", "1"});
    const Result c = run({"classify", "-"}, k6.out);
    CHECK(c.out.find("\"family\": \"K6\"") != std::string::npos);
}

TEST_CASE("cli verify") {
    const Result ik = run({"verify", "--variant", "Ik"});
    REQUIRE(ik.code == 0);
    const auto j = nlohmann::json::parse(ik.out);
    CHECK(j["family_count"] == 8);
    CHECK(ik.err.find("K5P") != std::string::npos);

    const Result all = run({"verify", "--all", "--samples", "20", "--seed", "1"});
    CHECK(all.code == 0);
    CHECK(nlohmann::json::parse(all.out)["family_count"] == 60);
    CHECK(run({"verify", "--all", "--samples", "20", "--seed", "1"}).out == all.out);

    CHECK(run({"verify", "--variant", "bogus"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"verify", "--variant", "Ik", "--samples", "0"}).code == 2);
    CHECK(run({"verify", "--variant", "R3", "--samples", "10"}).code == 0);
}

TEST_CASE("cli det and rank") {
    const std::string diag = R"({"g":[2,0,0,0,0,2,0,0,0,0,3,0,0,0,0,3]})";
    const Result d = run({"det", "-"}, diag);
    REQUIRE(d.code == 0);
    const auto j = nlohmann::json::parse(d.out);
    CHECK(j["det"].get<double>() == doctest::Approx(36));
    CHECK(j["det_paper"].get<double>() == doctest::Approx(36));
    const Result r = run({"rank", "-"}, R"({"g":[2,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]})");
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["rank"] == 1);
    CHECK(run({"rank", "-"}, "nope").code == 2);
}
