#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "rayclass/cli.hpp"

using namespace rayclass;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int const code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

/* runs the installed binary through the shell; returns (exit status, stdout) */
std::pair<int, std::string> run_binary(std::string const & args)
{
    std::string const cmd = std::string(RAYCLASS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE * pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string text;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
    int const status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

std::vector<std::string> const example = {
    "1", "20560", "-1252488", "-829016560", "-8751987701092", "217535583987600",
    "181262520621110344", "43806873084101200", "-278616280004972730", "139245187265282800",
    "-8883048242697656", "352945014869040", "23618989732508", "-1848032773840", "49965941112",
    "-425670800", "1"};

std::filesystem::path temp_path(std::string const & name)
{
    auto p = std::filesystem::temp_directory_path() / ("rayclass_test_" + std::to_string(::getpid()) + "_" + name);
    std::filesystem::remove(p);
    return p;
}

} // namespace

TEST_CASE("forms")
{
    auto const r = run_cli({"forms", "--disc", "-40"});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out == "1 0 10\n2 0 5\n");
}

TEST_CASE("usage errors exit with status 2")
{
    auto r = run_cli({"classpoly", "--disc", "5", "--level", "6"});
    CHECK(r.code == cli::exit_usage);
    CHECK(r.err.find("NotImaginary") != std::string::npos);
    CHECK(r.out.empty());

    r = run_cli({"forms", "--disc", "-12"});
    CHECK(r.code == cli::exit_usage);
    CHECK(r.err.find("NotFundamental") != std::string::npos);

    r = run_cli({"forms", "--disc", "-3"});
    CHECK(r.code == cli::exit_usage);
    CHECK(r.err.find("ExcludedField") != std::string::npos);

    CHECK(run_cli({"classpoly", "--disc", "-40", "--level", "1"}).code == cli::exit_usage);
    CHECK(run_cli({"classpoly", "--disc", "-40", "--level", "6", "--mode", "half"}).code == cli::exit_usage);
    CHECK(run_cli({"nonsense"}).code == cli::exit_usage);
    CHECK(run_cli({}).code == cli::exit_usage);
    CHECK(run_cli({"verify-lemmas", "--lemma", "3.2"}).code == cli::exit_usage);
    CHECK(run_cli({"verify-lemmas", "--lemma", "3.9"}).code == cli::exit_usage);
    CHECK(run_cli({"--help"}).code == cli::exit_ok);
}

TEST_CASE("wgroup and conjugates")
{
    auto r = run_cli({"wgroup", "--disc", "-40", "--level", "6"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 0 0 1\n1 0 3 1\n1 2 1 1\n1 2 4 1\n1 4 2 1\n1 4 5 1\n3 2 1 3\n3 2 4 3\n");
    r = run_cli({"conjugates", "--disc", "-40", "--level", "6"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 16);
    CHECK(r.out.rfind("0 1  1 0 10  1 0 0 1\n", 0) == 0);
}

TEST_CASE("classpoly JSON")
{
    auto const r = run_cli({"classpoly", "--disc", "-40", "--level", "6", "--mode", "reduced", "--json"});
    REQUIRE(r.code == 0);
    auto const j = nlohmann::ordered_json::parse(r.out);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::vector<std::string> const expected_keys = {
        "discriminant", "level",    "exponent", "power",  "degree", "coefficients", "precision_bits",
        "max_rounding_residual", "is_unit", "region", "mode", "max_imaginary_residual"};
    CHECK(keys == expected_keys);
    CHECK(j["discriminant"] == -40);
    CHECK(j["level"] == 6);
    CHECK(j["exponent"] == 12);
    CHECK(j["power"] == 1);
    CHECK(j["degree"] == 16);
    CHECK(j["coefficients"].get<std::vector<std::string>>() == example);
    CHECK(j["is_unit"] == true);
    CHECK(j["region"] == "extended");
    CHECK(j["precision_bits"].get<int>() <= 1024);
    CHECK(std::stod(j["max_rounding_residual"].get<std::string>()) < 1e-10);

    // lossless round trip and byte-identical reruns
    CHECK(j.dump(2) + "\n" == r.out);
    auto const again = run_cli({"classpoly", "--disc", "-40", "--level", "6", "--mode", "reduced", "--json"});
    CHECK(again.out == r.out);
}

TEST_CASE("classpoly text mode and powers")
{
    auto r = run_cli({"classpoly", "--disc", "-40", "--level", "6"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    CHECK(lines == example);

    auto const full = run_cli({"classpoly", "--disc", "-40", "--level", "6", "--mode", "full"});
    auto const pow6 = run_cli({"classpoly", "--disc", "-40", "--level", "6", "--power", "6"});
    CHECK(full.code == 0);
    CHECK(full.out == pow6.out);
    CHECK(run_cli({"classpoly", "--disc", "-40", "--level", "6", "--power", "0"}).code == cli::exit_usage);
}

TEST_CASE("precision cap failures")
{
    auto const r = run_cli({"classpoly", "--disc", "-40", "--level", "6", "--precision", "64"});
    CHECK(r.code == 0); // doubles from 64 bits until stable
    setenv("RAYCLASS_PRECISION_CAP", "100", 1);
    auto const capped = run_cli({"classpoly", "--disc", "-40", "--level", "6", "--precision", "64"});
    unsetenv("RAYCLASS_PRECISION_CAP");
    CHECK(capped.code == cli::exit_math_failure);
    CHECK(capped.err.find("PrecisionExhausted") != std::string::npos);

    setenv("RAYCLASS_PRECISION_CAP", "1000", 1);
    auto const over = run_cli({"classpoly", "--disc", "-40", "--level", "6", "--precision", "2000"});
    unsetenv("RAYCLASS_PRECISION_CAP");
    CHECK(over.code == cli::exit_usage);
    CHECK(over.err.find("PrecisionUnachievable") != std::string::npos);
}

TEST_CASE("cache")
{
    auto const path = temp_path("cache.json");
    std::vector<std::string> const args = {"classpoly", "--disc", "-40", "--level", "6", "--json",
                                           "--cache", path.string()};
    auto const first = run_cli(args);
    REQUIRE(first.code == 0);
    REQUIRE(std::filesystem::exists(path));
    auto cache = nlohmann::ordered_json::parse(std::ifstream(path));
    CHECK(cache.contains("-40:6:reduced:1"));

    auto const hit = run_cli(args);
    CHECK(hit.out == first.out);
    CHECK(hit.err.empty());

    // an entry that violates the degree law is discarded and recomputed
    cache["-40:6:reduced:1"]["coefficients"].erase(0);
    std::ofstream(path) << cache.dump();
    auto const repaired = run_cli(args);
    CHECK(repaired.code == 0);
    CHECK(repaired.out == first.out);
    CHECK(repaired.err.find("discarding") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("verify-generator and verify-lemmas")
{
    auto r = run_cli({"verify-generator", "--disc", "-40", "--level", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("conjugates 16\n", 0) == 0);

    r = run_cli({"verify-lemmas", "--disc", "-40", "--level", "21", "--lemma", "3.2"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("PASS nonprincipal-forms", 0) == 0);
    CHECK(r.out.find("samples 440") != std::string::npos);

    r = run_cli({"verify-lemmas", "--lemma", "3.1", "--nmax", "200", "--json"});
    CHECK(r.code == 0);
    auto const j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 6);
    for (auto const & rep : j) CHECK(rep["pass"] == true);

    r = run_cli({"verify-lemmas", "--disc", "-40", "--level", "6", "--nmax", "100"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 9);
}

TEST_CASE("the binary")
{
    auto const [code, out] = run_binary("forms --disc -40");
    CHECK(code == 0);
    CHECK(out == "1 0 10\n2 0 5\n");
    CHECK(run_binary("classpoly --disc 5 --level 6").first == 2);
    auto const [c2, json] = run_binary("classpoly --disc -40 --level 6 --mode reduced --power 1 --json");
    CHECK(c2 == 0);
    CHECK(nlohmann::json::parse(json)["coefficients"].get<std::vector<std::string>>() == example);
}
