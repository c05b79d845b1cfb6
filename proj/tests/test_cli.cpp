#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "sdepth/ideal.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SDEPTH_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    CliResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
        result.output.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/sdepth_cli_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("cli computes sdepth, depth and phi for a path ideal") {
    REQUIRE(run_cli("sdepth --path-ideal 6 3").output == "4\n");
    REQUIRE(run_cli("depth --path-ideal 6 3").output == "4\n");
    REQUIRE(run_cli("phi --path-ideal 6 3").output == "4\n");
    REQUIRE(run_cli("witness --path-ideal 6 3").output == "{1,2,5,6}\n");
}

TEST_CASE("cli verify emits the report schema") {
    auto r = run_cli("verify --path-ideal 4 2 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    REQUIRE(j["n"] == 4);
    REQUIRE(j["m"] == 2);
    REQUIRE(j["phi"] == 2);
    REQUIRE(j["depth"] == 2);
    REQUIRE(j["sdepth"] == 2);
    REQUIRE(j["tau_size"] == 2);
    REQUIRE(j["ok"] == true);
    REQUIRE(j["stage_runtimes_ms"].contains("depth"));
    REQUIRE(j["stage_runtimes_ms"].contains("sdepth"));
    REQUIRE(j["stage_runtimes_ms"].contains("witness"));
    REQUIRE(j["skipped"].empty());
}

TEST_CASE("cli depth --betti lists nonzero positions") {
    auto r = run_cli("depth --path-ideal 4 2 --betti --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    REQUIRE(j["depth"] == 2);
    REQUIRE(j["pd"] == 2);
    REQUIRE(!j["betti"].empty());
    // beta_0 at the empty multidegree is always present
    bool saw_unit = false;
    for (const auto& e : j["betti"])
        if (e["i"] == 0 && e["sigma"].empty() && e["rank"] == 1) saw_unit = true;
    REQUIRE(saw_unit);
}

TEST_CASE("cli reads the ideal text format") {
    const auto path =
        write_temp("ok.txt", sdepth::to_text(sdepth::make_path_ideal(6, 3)));
    REQUIRE(run_cli("depth --ideal " + path).output == "4\n");
    REQUIRE(run_cli("sdepth --ideal " + path).output == "4\n");

    SECTION("parse errors report the line number and exit 1") {
        const auto bad = write_temp("bad.txt", "n=4\n1 2\nwat\n");
        auto r = run_cli("depth --ideal " + bad);
        REQUIRE(r.exit_code == 1);
        REQUIRE(r.output.find("line 3") != std::string::npos);
    }
    SECTION("missing file exits 1") {
        REQUIRE(run_cli("depth --ideal /tmp/does_not_exist_sdepth.txt").exit_code == 1);
    }
}

TEST_CASE("cli usage errors") {
    REQUIRE(run_cli("").exit_code == 1);
    REQUIRE(run_cli("frobnicate").exit_code == 1);
    REQUIRE(run_cli("sdepth").exit_code == 1);                      // no source
    REQUIRE(run_cli("phi").exit_code == 1);                         // needs params
    REQUIRE(run_cli("sdepth --path-ideal 6 3 --ideal x").exit_code == 1);
    REQUIRE(run_cli("sdepth --path-ideal 6").exit_code == 1);       // wants two ints
    REQUIRE(run_cli("verify --path-ideal 3 9").exit_code == 1);     // m > n
}

TEST_CASE("cli skip exit code for instances above the cap") {
    auto r = run_cli("depth --path-ideal 16 2");  // default cap 14
    REQUIRE(r.exit_code == 3);
    REQUIRE(r.output.find("skipped") != std::string::npos);

    // verify marks the stage and reports the skip through the exit code
    auto v = run_cli("verify --path-ideal 16 2 --format json");
    REQUIRE(v.exit_code == 3);
    auto j = nlohmann::json::parse(v.output);
    REQUIRE(j["depth"].is_null());
    REQUIRE(!j["skipped"].empty());
}

TEST_CASE("cli table emits one record per grid cell") {
    auto r = run_cli("table --nmax 5 --format json");
    REQUIRE(r.exit_code == 0);
    int records = 0;
    std::size_t pos = 0;
    while ((pos = r.output.find('\n', pos)) != std::string::npos) {
        ++records;
        ++pos;
    }
    REQUIRE(records == 15);

    SECTION("csv has a header and matching rows") {
        auto c = run_cli("table --nmax 4 --format csv");
        REQUIRE(c.exit_code == 0);
        REQUIRE(c.output.rfind("n,m,phi,depth,sdepth,tau_size,ok", 0) == 0);
    }
    SECTION("parallel mode reproduces the sequential records in order") {
        auto seq = run_cli("table --nmax 6 --format csv");
        auto par = run_cli("table --nmax 6 --format csv --parallel");
        auto strip_runtimes = [](const std::string& text) {
            std::string out;
            std::size_t start = 0;
            while (start < text.size()) {
                std::size_t end = text.find('\n', start);
                if (end == std::string::npos) end = text.size();
                std::string line = text.substr(start, end - start);
                int commas = 0;
                for (std::size_t i = 0; i < line.size(); ++i) {
                    if (line[i] == ',') ++commas;
                    if (commas == 7) {
                        line.resize(i);
                        break;
                    }
                }
                out += line + "\n";
                start = end + 1;
            }
            return out;
        };
        REQUIRE(strip_runtimes(seq.output) == strip_runtimes(par.output));
    }
}

TEST_CASE("cli poset-stats reports rank counts") {
    auto r = run_cli("poset-stats --path-ideal 6 3 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    REQUIRE(j["n"] == 6);
    REQUIRE(j["quotient_side"]["total"] == 44);
    REQUIRE(j["ideal_side"]["total"] == 64 - 44);
    REQUIRE(j["quotient_side"]["ranks"][0] == 1);
}

TEST_CASE("cli trace prints the recursion and pattern checks") {
    auto r = run_cli("trace --path-ideal 8 3 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    REQUIRE(j["ok"] == true);
    REQUIRE(j["main_case"] == true);
    REQUIRE(j["k"] == 2);
    REQUIRE(j["steps"].size() == 2);
    REQUIRE(j["mismatches"].empty());

    auto base = run_cli("trace --path-ideal 5 3");
    REQUIRE(base.exit_code == 0);
    REQUIRE(base.output.find("base case") != std::string::npos);
}
