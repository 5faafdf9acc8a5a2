#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "helpers.hpp"
#include "vcx/cli/cli.hpp"
#include "vcx/cli/fuzz.hpp"
#include "vcx/cli/io.hpp"
#include "vcx/cli/report.hpp"
#include "vcx/constructions.hpp"
#include "vcx/errors.hpp"

using namespace vcx;
using namespace vcx::cli;
using testing::F;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
    const auto dir = std::filesystem::temp_directory_path() / ("vcx_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_star(const std::filesystem::path& dir) {
    const auto path = (dir / "star52.fam").string();
    save_family(path, star_family(5, 2));
    return path;
}

std::vector<std::string> keys(const Json& j) {
    std::vector<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
    return out;
}

}  // namespace

TEST_CASE("load_family examples") {
    const UniformFamily two = parse_family("4 3\n1 2 3\n1 2 4\n");
    CHECK(two == F(4, 3, {{1, 2, 3}, {1, 2, 4}}));
    const UniformFamily none = parse_family("5 3");
    CHECK(none.empty());
    CHECK(none.n() == 5);
    CHECK(none.k() == 3);
    CHECK(parse_family("# comment\n\n4 2\n3 4\n# more\n1 2\n\n") == F(4, 2, {{1, 2}, {3, 4}}));
    CHECK(parse_family("4 2\r\n1 2\r\n") == F(4, 2, {{1, 2}}));
}

TEST_CASE("load_family errors name the line") {
    const auto message = [](const char* text) {
        try {
            parse_family(text, "f.fam");
        } catch (const UsageError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("4 3\n1 2 3\n1 2 3\n") == "f.fam:3: duplicate member");
    CHECK(message("4 3\n1 2\n").rfind("f.fam:2: expected 3 elements", 0) == 0);
    CHECK(message("4 3\n1 2 5\n").rfind("f.fam:2: element 5 out of range", 0) == 0);
    CHECK(message("4 3\n1 3 2\n") == "f.fam:2: elements must be strictly increasing");
    CHECK(message("4 3\n1 x 2\n") == "f.fam:2: not an integer: 'x'");
    CHECK(message("4\n") == "f.fam:1: header must be \"n k\"");
    CHECK(message("") .find("missing \"n k\" header") != std::string::npos);
    CHECK(message("64 2\n").find("n must lie") != std::string::npos);
    CHECK(message("4 5\n").find("k must lie") != std::string::npos);
    CHECK_THROWS_AS(load_family("/nonexistent/x.fam"), UsageError);
}

TEST_CASE("family text round trip") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const UniformFamily fam = random_maximal_vc_family({seed, 7, 2});
        CHECK(parse_family(format_family(fam)) == fam);
    }
    // File order does not matter.
    CHECK(format_family(parse_family("4 2\n3 4\n1 2\n")) == "4 2\n1 2\n3 4\n");
    const auto dir = scratch();
    save_family(dir / "rt.fam", star_family(6, 2));
    CHECK(load_family(dir / "rt.fam") == star_family(6, 2));
}

TEST_CASE("fnv1a64 reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("gen subcommand") {
    const auto dir = scratch();
    const auto out = (dir / "gen.fam").string();
    CHECK(run({"gen", "--kind", "star", "--n", "5", "--d", "2", "--out", out}).code == kExitOk);
    CHECK(load_family(out) == star_family(5, 2));
    const Run text = run({"gen", "--kind", "complete", "--n", "4", "--d", "1"});
    CHECK(text.code == kExitOk);
    CHECK(text.out == format_family(complete_family(4, 2)));
    const Run r1 = run({"gen", "--kind", "random", "--n", "7", "--d", "2", "--seed", "9", "--json"});
    const Run r2 = run({"--seed", "9", "--json", "gen", "--kind", "random", "--n", "7", "--d", "2"});
    CHECK(r1.code == kExitOk);
    CHECK(r1.out == r2.out);
    CHECK(Json::parse(r1.out)["size"] == random_maximal_vc_family({9, 7, 2}).size());
    CHECK(run({"gen", "--kind", "bogus", "--n", "5", "--d", "2"}).code == kExitUsage);
    CHECK(run({"gen", "--kind", "star", "--n", "2", "--d", "2"}).code == kExitUsage);
}

TEST_CASE("vc, shadow, certify and sunflower subcommands") {
    const auto dir = scratch();
    const auto star = write_star(dir);
    const Json vc = Json::parse(run({"vc", "--input", star, "--json"}).out);
    CHECK(vc["vc_dimension"] == 2);
    CHECK(vc["witness"] == Json::array({2, 3}));
    CHECK(vc["sauer_shelah_bound"] == 16);

    const Json sh = Json::parse(run({"shadow", "--input", star, "--complement", "--json"}).out);
    CHECK(sh["complement"] == true);
    CHECK(sh["size"] == 0);
    CHECK(sh["total"] == 10);

    const Run cert = run({"certify", "--input", star, "--d", "2", "--json"});
    REQUIRE(cert.code == kExitOk);
    const Json c = Json::parse(cert.out);
    CHECK(c["certificates"]["1 2 3"] == Json::array({2, 3}));
    CHECK(c["strata"]["2"] == 6);
    CHECK(c["fiber_histogram"]["1"] == 6);
    CHECK(c["fiber_shapes"].empty());
    CHECK(run({"certify", "--input", star, "--d", "1"}).code == kExitUsage);

    const Json sun = Json::parse(run({"sunflower", "--input", star, "--p", "3", "--json"}).out);
    CHECK(sun["found"] == true);
    CHECK(sun["valid"] == true);
    CHECK(sun["core"] == Json::array({1, 2}));
    CHECK(run({"sunflower", "--input", star, "--p", "0"}).code == kExitUsage);
}

TEST_CASE("pipeline JSON has exactly the documented keys") {
    const auto dir = scratch();
    const auto star = write_star(dir);
    const Run r = run({"pipeline", "--input", star, "--d", "2", "--json"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(keys(j) == std::vector<std::string>{"anchors", "sizes", "classes", "f", "g", "asserted", "reported"});
    CHECK(j["anchors"]["i"] == 1);
    CHECK(j["anchors"]["j"] == 2);
    CHECK(j["classes"]["1 3 4"] == "H0STAR");
    CHECK(j["classes"]["1 2 5"] == "H12");
    CHECK(j["f"]["1 2 3"] == Json::parse("[[0, 2]]"));
    CHECK(j["f"]["1 4 5"] == Json::parse("[[5, 2]]"));
    CHECK(j["g"]["1 3 4"] == 2);
    CHECK(j["sizes"]["index_family"] == 6);
    for (const Json& a : j["asserted"]) CHECK(a["holds"] == true);
    CHECK(j["asserted"][2]["lhs"] == 6);
    CHECK(j["asserted"][2]["rhs"] == 6);
    CHECK(j["reported"]["pair_threshold"] == Json::parse(R"({"num":1600,"den":1})"));
    CHECK(j["reported"]["v_share_of_cobar_g"].is_null());
    // No floating point anywhere.
    const std::string text = r.out;
    std::function<void(const Json&)> no_float = [&](const Json& v) {
        CHECK_FALSE(v.is_number_float());
        if (v.is_structured()) {
            for (const Json& child : v) no_float(child);
        }
    };
    no_float(j);
    const Run table = run({"pipeline", "--input", star, "--d", "2"});
    CHECK(table.out.find("audit:") != std::string::npos);
    CHECK(table.out.find("6 <= 6") != std::string::npos);
}

TEST_CASE("pipeline exit codes") {
    const auto dir = scratch();
    const auto path = (dir / "k63.fam").string();
    save_family(path, complete_family(6, 3));
    CHECK(run({"pipeline", "--input", path, "--d", "2"}).code == kExitUsage);
    const Run assumed = run({"pipeline", "--input", path, "--d", "2", "--assume-vc"});
    CHECK(assumed.code == kExitInvariant);
    CHECK(assumed.err.find("invariant violation") != std::string::npos);
    CHECK(run({"pipeline", "--input", (dir / "missing.fam").string(), "--d", "2"}).code == kExitUsage);
    CHECK(run({"pipeline", "--d", "2"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("search subcommand") {
    const Run r = run({"search", "--n", "6", "--d", "2", "--json"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j.contains("best"));
    CHECK(j["optimal"] == true);
    CHECK(j["bracket"]["lower"] == 11);
    CHECK(j["bracket"]["upper"] == 14);

    const Json w = Json::parse(run({"search", "--n", "7", "--d", "2", "--mode", "witness", "--json"}).out);
    CHECK(w["target"] == 16);
    CHECK(w["target_reached"] == true);
    CHECK(w["best"] >= 16);

    const Json o = Json::parse(run({"search", "--n", "6", "--d", "2", "--mode", "order-s", "--s", "2", "--json"}).out);
    CHECK(o["counterexample"] == false);
    CHECK(o["conjectured_bound"] == 10);

    CHECK(run({"search", "--n", "7", "--d", "2", "--max-nodes", "3"}).code == kExitBudget);
    CHECK(run({"search", "--n", "6", "--d", "2", "--mode", "witness", "--target", "100"}).code == kExitBudget);
    CHECK(run({"search", "--n", "6", "--d", "2", "--mode", "order-s"}).code == kExitUsage);
    CHECK(run({"search", "--n", "6", "--d", "2", "--mode", "order-s", "--s", "3"}).code == kExitUsage);
    CHECK(run({"search", "--n", "6", "--d", "2", "--threads", "2", "--json"}).code == kExitOk);
}

TEST_CASE("identical inputs give identical JSON") {
    const auto dir = scratch();
    const auto star = write_star(dir);
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"pipeline", "--input", star, "--d", "2", "--json"},
             {"certify", "--input", star, "--d", "2", "--json"},
             {"gen", "--kind", "random", "--n", "9", "--d", "3", "--seed", "4", "--json"},
             {"fuzz", "--n", "7", "--d", "2", "--count", "20", "--seed0", "3", "--json"}}) {
        CHECK(run(args).out == run(args).out);
    }
    const std::vector<std::string> search{"search", "--n", "6", "--d", "2", "--json"};
    const Json a = Json::parse(run(search).out);
    const Json b = Json::parse(run(search).out);
    CHECK(dump(strip_volatile(a)) == dump(strip_volatile(b)));
    CHECK_FALSE(strip_volatile(a).contains("nodes"));
    CHECK_FALSE(strip_volatile(a).contains("wall_ms"));
}

TEST_CASE("manifest") {
    const auto dir = scratch();
    const auto star = write_star(dir);
    const auto m1 = (dir / "m1.json").string();
    const auto m2 = (dir / "m2.json").string();
    const Run r = run({"--manifest", m1, "pipeline", "--input", star, "--d", "2", "--json"});
    REQUIRE(r.code == kExitOk);
    run({"pipeline", "--input", star, "--d", "2", "--manifest", m2});
    const Json a = Json::parse(read_file(m1));
    const Json b = Json::parse(read_file(m2));
    CHECK(a["input_digest"] == hex64(fnv1a64(read_file(star))));
    CHECK(a["result_digest"] == b["result_digest"]);
    CHECK(a["result_digest"] == hex64(result_digest(Json::parse(r.out))));
    CHECK(a["tool_version"] == kToolVersion);
    CHECK(a["command_line"][0] == "vcx");
}

TEST_CASE("fuzz campaign examples") {
    FuzzOptions o;
    o.n = 6;
    o.d = 2;
    o.count = 100;
    const FuzzSummary s = fuzz_campaign(o);
    CHECK(s.passed == 100);
    CHECK(s.failed == 0);
    CHECK(s.max_column_sum <= 2);
    CHECK(s.max_fiber <= s.fiber_ceiling);

    FuzzOptions tiny;
    tiny.n = 3;
    tiny.d = 2;
    tiny.count = 10;
    const FuzzSummary t = fuzz_campaign(tiny);
    CHECK(t.passed == 10);
    CHECK(t.max_family == 1);

    o.threads = 3;
    CHECK(fuzz_json(fuzz_campaign(o)) == fuzz_json(s));

    FuzzOptions bad;
    bad.n = 3;
    bad.d = 3;
    CHECK_THROWS_AS(fuzz_campaign(bad), UsageError);
    CHECK(run({"fuzz", "--n", "6", "--d", "2", "--count", "5", "--keep", "x"}).code == kExitUsage);
    CHECK(run({"fuzz", "--n", "6", "--d", "2", "--count", "5", "--keep", "3/2"}).code == kExitUsage);
    const Run sub = run({"fuzz", "--n", "7", "--d", "2", "--count", "30", "--keep", "1/2", "--json"});
    CHECK(sub.code == kExitOk);
    CHECK(Json::parse(sub.out)["passed"] == 30);
}

TEST_CASE("replaying a campaign family is bit-identical") {
    FuzzOptions o;
    o.n = 9;
    o.d = 3;
    const auto dir = scratch();
    const UniformFamily fam = fuzz_family(o, 17);
    save_family(dir / "replay.fam", fam);
    const UniformFamily back = load_family(dir / "replay.fam");
    CHECK(back == fam);
    const SeedStats a = check_family(fam, 3, true);
    const SeedStats b = check_family(back, 3, true);
    CHECK(a.rules == b.rules);
    CHECK(a.slack == b.slack);
    const auto path = (dir / "replay.fam").string();
    CHECK(run({"pipeline", "--input", path, "--d", "3", "--json"}).out ==
          run({"pipeline", "--input", path, "--d", "3", "--json"}).out);
}

TEST_CASE("check_family flags a non-maximal family") {
    const UniformFamily fam = random_maximal_vc_family({1, 7, 2});
    const UniformFamily sub(7, 3, std::vector<Subset>(fam.begin() + 1, fam.end()));
    CHECK_THROWS_AS(check_family(sub, 2, true), InvariantViolation);
    CHECK_NOTHROW(check_family(sub, 2, false));
}
