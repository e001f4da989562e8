#include <homorder/cli.hh>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace homorder;
namespace fs = std::filesystem;

namespace
{
    struct Result
    {
        int code;
        std::string out, err;
    };

    auto run(std::vector<std::string> args) -> Result
    {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }

    auto data(const std::string & name) -> std::string
    {
        return (fs::path{HOMORDER_SOURCE_DIR} / "data" / name).string();
    }

    auto manifest(const std::string & name) -> std::string
    {
        return (fs::path{HOMORDER_SOURCE_DIR} / "manifests" / name).string();
    }

    auto temp_file(const std::string & name) -> fs::path
    {
        auto dir = fs::temp_directory_path() / "homorder_cli_test";
        fs::create_directories(dir);
        return dir / name;
    }
}

TEST_CASE("hom between catalogue files")
{
    auto r = run({"hom", "--from", data("l1.path"), "--to", data("l0.path")});
    CHECK(r.code == 0);
    CHECK(r.out.find("map: ") != std::string::npos);
    CHECK(run({"hom", "--from", data("l0.path"), "--to", data("l1.path")}).code == 1);
    CHECK(run({"hom", "--from", "FFBFF", "--to", "FFF", "--oracle", "brute"}).code == 0);
}

TEST_CASE("hom witnesses in JSON re-validate")
{
    auto r = run({"hom", "--from", "FFBFF", "--to", "FFF", "--json"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["exists"] == true);
    auto f = homomorphism_from_json(j["witness"], parse_structure("FFBFF"), parse_structure("FFF"));
    CHECK(f.map.size() == 6);
}

TEST_CASE("counting, enumerating and surjections")
{
    auto r = run({"hom", "--from", "F", "--to", "FF", "--count"});
    CHECK(r.code == 0);
    CHECK(r.out == "count: 2\n");
    CHECK(run({"hom", "--from", "F", "--to", "FF", "--enumerate"}).out == "0 1\n1 2\n2 homomorphisms\n");
    CHECK(run({"hom", "--from", "FBFB", "--to", "F", "--enumerate", "--budget", "0"}).code == 2);
    CHECK(run({"hom", "--from", "FF", "--to", "FF", "--surjective"}).code == 0);
    CHECK(run({"hom", "--from", "F", "--to", "FF", "--surjective"}).code == 1);
}

TEST_CASE("classification verdicts")
{
    CHECK(run({"classify", "--lower", data("p0.path"), "--upper", data("p1.path")}).out.rfind("Gap\n", 0) == 0);
    CHECK(run({"classify", "--lower", "FF", "--upper", data("l3.path")}).out.rfind("Chain\n", 0) == 0);
    CHECK(run({"classify", "--lower", "FFF", "--upper", "FFFF"}).out.rfind("Universal\n", 0) == 0);
    auto same = run({"classify", "--lower", data("l1.path"), "--upper", data("l1.path")});
    CHECK(same.out.rfind("NotStrictlyOrdered\n", 0) == 0);
    CHECK(same.code == 1);
}

TEST_CASE("between")
{
    auto r = run({"between", "--lower", "FF", "--upper", "FFF", "--max-arcs", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("Found\n", 0) == 0);
    CHECK(run({"between", "--lower", "", "--upper", "F"}).out == "CertifiedGap\n");
    CHECK(run({"between", "--lower", "F", "--upper", ""}).code == 2);
}

TEST_CASE("catalogue generators")
{
    CHECK(run({"catalog", "lpath", "1"}).out == "FFBFF\n");
    CHECK(run({"catalog", "dpath", "3"}).out == "FFF\n");
    CHECK(run({"catalog", "zigzag", "3", "--start", "B"}).out == "BFB\n");
    auto chain = run({"catalog", "chain", "1"});
    CHECK(chain.code == 0);
    CHECK(chain.out == "P0 \nP1 F\nP2 FF\nL1 FFBFF\nL0 FFF\n");
}

TEST_CASE("core, height and dot")
{
    CHECK(run({"core", "FBFFB"}).out.rfind("FF\n", 0) == 0);
    auto h = Json::parse(run({"height", "FFBFF", "--json"}).out);
    CHECK(h["height"] == 3);
    CHECK(run({"export-dot", "FB", "--name", "Q"}).out.rfind("digraph Q {", 0) == 0);
}

TEST_CASE("bad input exits with 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"hom", "--from", "FXF", "--to", "F"}).code == 2);
    CHECK(run({"hom", "--from", "F"}).code == 2);
    CHECK(run({"catalog", "zigzag", "0"}).code == 2);
}

TEST_CASE("JSON reports are deterministic")
{
    std::vector<std::string> args{"classify", "--lower", "FF", "--upper", "FFBFBFF", "--json"};
    CHECK(run(args).out == run(args).out);
    std::vector<std::string> embed{"embed-verify", data("gadget_p3_p4.json"), "--sample", "6", "--seed", "3", "--json"};
    auto first = run(embed);
    CHECK(first.code == 0);
    CHECK(first.out == run(embed).out);
    CHECK(Json::parse(first.out)["seed"] == 3);
}

TEST_CASE("gadget build and verify")
{
    auto bundle = temp_file("gadget.json");
    auto r = run({"gadget", "build", "--lower", "FFF", "--upper", "FFFF", "--base", "FFBFFBBFFF", "--out", bundle.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("verified: yes") != std::string::npos);
    CHECK(run({"gadget", "verify", bundle.string()}).code == 0);
    auto negative = run({"gadget", "verify", bundle.string(), "--force-zigzag", "2"});
    CHECK(negative.code == 1);
    CHECK(negative.out.find("condition (ii): FailedWithWitness") != std::string::npos);
    CHECK(run({"embed-verify", bundle.string()}).code == 0);

    // the shipped bundle is what the build produces
    std::ifstream a{bundle}, b{data("gadget_p3_p4.json")};
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());

    std::ofstream{temp_file("broken.json")} << "{\"lower\": \"FFF\"}";
    CHECK(run({"gadget", "verify", temp_file("broken.json").string()}).code == 2);
}

TEST_CASE("gadget build searches for a base when none is given")
{
    auto r = run({"gadget", "build", "--lower", "FFF", "--upper", "FFFF", "--max-arcs", "8", "--json"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["report"]["verified"] == true);
}

TEST_CASE("batch manifests")
{
    auto ok = run({"batch-verify", manifest("default.json")});
    CHECK(ok.code == 0);
    CHECK(ok.out.find(": fail") == std::string::npos);

    auto bad = run({"batch-verify", manifest("negative_zigzag2.json"), "--json"});
    CHECK(bad.code == 1);
    auto j = Json::parse(bad.out);
    REQUIRE(j["checks"].size() == 2);
    for (auto & c : j["checks"]) {
        CHECK(c["status"] == "fail");
        CHECK(c["data"]["condition_ii"]["status"] == "FailedWithWitness");
    }
    CHECK(j["checks"][0]["name"] < j["checks"][1]["name"]);

    auto empty = run({"batch-verify", manifest("empty.json"), "--json"});
    CHECK(empty.code == 0);
    CHECK(Json::parse(empty.out)["checks"].empty());

    CHECK(run({"batch-verify", "/nonexistent/manifest.json"}).code == 2);
}
