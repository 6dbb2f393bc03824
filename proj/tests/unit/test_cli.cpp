#include "doctest.h"

#include "kdvres/cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

using namespace kdvres;
using namespace kdvres::cli;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "kdvres");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path fresh_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("kdvres_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("config round trip") {
    Config c;
    CHECK(Config::from_text(c.to_text()) == c);
    c.dmax = 7;
    c.format = Format::Json;
    c.c_flow = frac(1, 3);
    c.c0 = Rational(5);
    c.taus = {"adler-moser:2", "soliton:p=1/2"};
    c.cache_dir = "/tmp/x";
    CHECK(Config::from_text(c.to_text()) == c);
    CHECK_THROWS_AS(Config::from_text("nonsense = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_text("dmax = two\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_text("taus = theta\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_text("c_flow = 0\n"), ConfigError);
    CHECK(Config::from_text("# comment\n\ndmax = 3 # trailing\n").dmax == 3);
}

TEST_CASE("cache key carries cutoffs and conventions") {
    auto a = cache_key("diffalg", "gen-s", {"max12"}, Rational(-2), std::nullopt);
    CHECK(a == "diffalg.gen-s.max12.cflow-2.c0cal.json");
    CHECK(cache_key("dmod", "kernel", {"d12"}, frac(1, 2), Rational(2)) == "dmod.kernel.d12.cflow1d2.c02.json");
    CHECK(a != cache_key("diffalg", "gen-s", {"max10"}, Rational(-2), std::nullopt));
    CHECK(a != cache_key("diffalg", "gen-s", {"max12"}, Rational(1), std::nullopt));
}

TEST_CASE("exit codes") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"verify", "bogus"}).code == 2);
    CHECK(invoke({"--format", "xml", "config"}).code == 2);
    CHECK(invoke({"--times", "2", "config"}).code == 2);
    CHECK(invoke({"--config", "/nonexistent/kdvres.cfg", "config"}).code == 2);
    CHECK(invoke({"verify", "null-vectors", "--dmax", "5"}).code == 0);
    CHECK(invoke({"verify", "kernel", "--dmax", "6"}).code == 0);
    CHECK(invoke({"verify", "kernel", "--dmax", "6", "--c-flow", "1", "--c0", "2"}).code == 1);
}

TEST_CASE("flags override the config file") {
    auto dir = fresh_dir("config");
    std::ofstream(dir / "k.cfg") << "dmax = 3\nformat = csv\n";
    auto r = invoke({"--config", (dir / "k.cfg").string(), "--dmax", "5", "config"});
    REQUIRE(r.code == 0);
    auto c = Config::from_text(r.out);
    CHECK(c.dmax == 5);
    CHECK(c.format == Format::Csv);
    std::filesystem::remove_all(dir);
}

TEST_CASE("tables and the cache") {
    auto r = invoke({"gen-s", "--max", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "S2 = -1/2 u\nS4 = 3/8 u^2 - 1/8 u''\n");

    auto dir = fresh_dir("cache");
    std::vector<std::string> args{"--cache", dir.string(), "bar-s", "--max", "6", "--format", "json"};
    auto first = invoke(args);
    CHECK(first.code == 0);
    auto second = invoke(args);
    CHECK(second.code == 0);
    CHECK(second.err.find("cache hit, verified identical") != std::string::npos);
    CHECK(first.out == second.out);

    auto file = dir / "fock.bar-s.max6.cflow-2.c0cal.json";
    REQUIRE(std::filesystem::exists(file));
    std::ofstream(file, std::ios::app) << " ";
    CHECK(invoke(args).code == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("null-vectors listing") {
    auto r = invoke({"null-vectors", "--degree", "4", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("C-image") != std::string::npos);
    auto json = invoke({"verify", "equivalence", "--dmax", "4", "--format", "json"});
    CHECK(json.code == 0);
    CHECK(json.out.find("\"c0_source\": \"calibrated\"") != std::string::npos);
    CHECK(json.out == invoke({"verify", "equivalence", "--dmax", "4", "--format", "json"}).out);
}
