#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "intertwine/cli.hpp"
#include "intertwine/errors.hpp"

using namespace intertwine;
using C = Complex;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_complex") {
    CHECK(parse_complex("0.3") == C(0.3, 0));
    CHECK(parse_complex("0.3i") == C(0, 0.3));
    CHECK(parse_complex("-i") == C(0, -1));
    CHECK(parse_complex("0.1+0.3i") == C(0.1, 0.3));
    CHECK(parse_complex("1e-3-2e-2i") == C(1e-3, -2e-2));
    CHECK_THROWS_AS(parse_complex("abc"), DomainError);
    CHECK_THROWS_AS(parse_complex("0.1+"), DomainError);
    const C z(0.1234567890123, -9.87654321e-5);
    CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("passing check exits 0 with a JSON document") {
    const Run r = call({"verify-beta", "--json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "verify-beta");
    CHECK(j["passed"] == true);
    CHECK(j["config"]["seed"] == 1);
}

TEST_CASE("failing check exits 1") {
    // the alternative eigenvalue form breaks the pairing relation
    const Run r = call({"verify-eigen", "--n", "1", "--json"});
    CHECK(r.code == 1);
}

TEST_CASE("configuration errors exit 2 with error JSON") {
    Run r = call({"verify-beta", "--no-such-flag"});
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.err)["error"] == "ConfigError");

    r = call({});
    CHECK(r.code == 2);

    r = call({"verify-star-triangle", "--alpha", "0.2+0.7i"});
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.err)["error"] == "DomainError");

    r = call({"verify-certificate", "/nonexistent/cert.json"});
    CHECK(r.code == 2);
}

TEST_CASE("derivation certificate through the CLI") {
    const auto dir = std::filesystem::temp_directory_path() / "intertwine_cli_test";
    std::filesystem::create_directories(dir);
    const std::string cert = (dir / "yb.json").string();
    Run r = call({"derive-yb", "--certificate", cert});
    CHECK(r.code == 0);
    r = call({"verify-certificate", cert, "--expect-end", "yb-rhs"});
    CHECK(r.code == 0);

    auto j = nlohmann::json::parse(std::ifstream(cert));
    j["steps"][0]["position"] = 1;
    std::ofstream(cert) << j.dump();
    r = call({"verify-certificate", cert});
    CHECK(r.code == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("report goes to --output") {
    const auto path = std::filesystem::temp_directory_path() / "intertwine_cli_report.json";
    const Run r = call({"verify-star-triangle", "--bands", "16,32", "--trials", "1", "-o", path.string()});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(std::ifstream(path));
    CHECK(j["reports"].size() == 1);
    std::filesystem::remove(path);
}

TEST_CASE("identical config and seed give identical reports") {
    auto strip = [](nlohmann::json j) {
        for (auto& r : j["reports"]) r.erase("wall_time_ms");
        return j.dump();
    };
    const std::vector<std::string> args{"verify-star-triangle", "--bands", "16", "--trials", "2", "--seed", "9",
                                        "--json"};
    const Run a = call(args), b = call(args);
    CHECK(strip(nlohmann::json::parse(a.out)) == strip(nlohmann::json::parse(b.out)));
}

TEST_CASE("help lists every subcommand and prints defaults") {
    const Run top = call({"--help"});
    CHECK(top.code == 0);
    for (const char* s : {"verify-beta", "verify-eigen", "verify-unitary", "verify-intertwine", "verify-star-triangle",
                          "verify-star-triangle-weak", "verify-yang-baxter", "derive-yb", "search-derivation",
                          "convergence", "verify-certificate"}) {
        CHECK(top.out.find(s) != std::string::npos);
    }
    const Run sub = call({"verify-yang-baxter", "--help"});
    CHECK(sub.code == 0);
    CHECK(sub.out.find("12,16,24,32") != std::string::npos);
}
