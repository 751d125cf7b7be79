#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hhlab/cli.hpp"

namespace fs = std::filesystem;

namespace {
int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "hhlab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return hh::run_cli(int(argv.size()), argv.data());
}

fs::path scratch(const std::string& name) {
    const auto d = fs::temp_directory_path() / ("hhlab_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path write_config(const fs::path& dir, const std::string& body) {
    const auto p = dir / "run.ini";
    std::ofstream(p) << body;
    return p;
}

const std::string kSmall = R"([exponents]
m = 2
p = 1.8
sigma = -1
dim = 3
[grid]
r_max = 10
cells = 80
[initial]
amplitude = 1
radius = 2
[solver]
horizon = 0.2
)";
}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify from flags and from a broken config") {
    CHECK(cli({"classify", "--m", "2", "--p", "1.8", "--sigma", "-1", "--dim", "3"}) == hh::kExitOk);
    CHECK(cli({"classify", "--m", "2", "--p", "1.8", "--sigma", "-1"}) == hh::kExitConfig);
    const auto d = scratch("classify");
    std::string body = kSmall;
    body.erase(body.find("dim = 3"), 7);
    CHECK(cli({"classify", "--config", write_config(d, body).string()}) == hh::kExitConfig);
    CHECK(cli({"frobnicate"}) == hh::kExitConfig);
    CHECK(hh::classify_report({2, 1.8, -1, 3}).find("regime=BlowUpAllData") != std::string::npos);
}

TEST_CASE("simulate is reproducible and embeds the config hash") {
    const auto d = scratch("simulate");
    const auto cfg = write_config(d, kSmall).string();
    REQUIRE(cli({"simulate", "--config", cfg, "--out", (d / "a").string()}) == hh::kExitOk);
    REQUIRE(cli({"simulate", "--config", cfg, "--out", (d / "b").string()}) == hh::kExitOk);
    const auto a = slurp(d / "a" / "series.csv"), b = slurp(d / "b" / "series.csv");
    CHECK(!a.empty());
    CHECK(a == b);
    const auto h = hh::artifact_hash((d / "a" / "series.csv").string());
    CHECK(h.size() == 64);
    CHECK(a.find("config_hash=" + h) != std::string::npos);
    CHECK(hh::artifact_hash((d / "a" / "config.ini").string()) == h);
    CHECK(cli({"simulate", "--config", (d / "a" / "config.ini").string(), "--out", (d / "r").string()}) ==
          hh::kExitOk);
    CHECK(slurp(d / "r" / "series.csv") == a);
    CHECK(fs::exists(d / "a" / "snapshot_0000.field"));

    CHECK(cli({"verify", "--compare", (d / "a" / "series.csv").string(), (d / "b" / "series.csv").string()}) ==
          hh::kExitOk);
    std::string other = kSmall;
    other.replace(other.find("horizon = 0.2"), 13, "horizon = 0.3");
    const auto cfg2 = write_config(d, other).string();
    REQUIRE(cli({"simulate", "--config", cfg2, "--out", (d / "c").string()}) == hh::kExitOk);
    CHECK(cli({"verify", "--compare", (d / "a" / "series.csv").string(), (d / "c" / "series.csv").string()}) ==
          hh::kExitVerify);
}

TEST_CASE("escape from the truncated domain has its own exit code") {
    const auto d = scratch("escape");
    std::string body = kSmall;
    body.replace(body.find("p = 1.8"), 7, "p = 1.2");
    body.replace(body.find("r_max = 10"), 10, "r_max = 3");
    body.replace(body.find("horizon = 0.2"), 13, "horizon = 50");
    CHECK(cli({"simulate", "--config", write_config(d, body).string(), "--out", (d / "o").string()}) ==
          hh::kExitEscape);
}

TEST_CASE("sweep writes one row per exponent") {
    const auto d = scratch("sweep");
    const std::string body = kSmall + "[sweep]\np = 1.2, 1.5, 1.8, 2.0, 2.5, 3.0\n";
    REQUIRE(cli({"sweep", "--config", write_config(d, body).string(), "--out", (d / "s").string(), "--workers",
                 "2"}) == hh::kExitOk);
    std::istringstream is(slurp(d / "s" / "sweep.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#' && line[0] != 'p') ++rows;
    CHECK(rows == 6);
    CHECK(fs::exists(d / "s" / "series_p1.200000.csv"));
}

TEST_CASE("profile writes samples") {
    const auto d = scratch("profile");
    std::string body = kSmall;
    body.replace(body.find("p = 1.8"), 7, "p = 1.2");
    CHECK(cli({"profile", "--config", write_config(d, body).string(), "--out", (d / "o").string()}) ==
          hh::kExitOk);
    CHECK(fs::file_size(d / "o" / "profile.csv") > 1000);
}

}
