#include <catch2/catch.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_env(const std::string& env, const std::string& args) {
    std::string cmd = env + " " + std::string(FASO_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

RunResult run(const std::string& args) { return run_env("", args); }

const std::string water = std::string(FASO_SOURCE_DIR) + "/examples/water.faso";

} // namespace

TEST_CASE("solve water exits 0 and reports 38 models") {
    RunResult r = run("solve " + water);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("models: 38") != std::string::npos);
    CHECK(r.output.find("optimal: model") != std::string::npos);
}

TEST_CASE("missing file exits 1 with a message") {
    RunResult r = run("solve /nonexistent/missing.faso");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("cannot open file") != std::string::npos);
}

TEST_CASE("parse errors exit 1 with a span") {
    RunResult r = run("solve " + std::string(FASO_SOURCE_DIR) + "/CMakeLists.txt");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("budget exhaustion exits 2") {
    RunResult r = run("solve " + water + " --budget 10");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("budget") != std::string::npos);
}

TEST_CASE("json output is a schema-shaped document and deterministic") {
    RunResult a = run("solve " + water + " --json");
    RunResult b = run("solve " + water + " --json");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.rfind("{\"models\":[", 0) == 0);
    CHECK(a.output.find("\"optimal\":[1]") != std::string::npos);
    CHECK(a.output.find("\"strategy\":\"pareto\"") != std::string::npos);
}

TEST_CASE("strategy flag flips the reported strategy") {
    RunResult r = run("solve " + water + " --strategy maximal --json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"strategy\":\"maximal\"") != std::string::npos);
    CHECK(r.output.find("\"optimal\":[1]") != std::string::npos);
}

TEST_CASE("dump-models emits one json object per model") {
    RunResult r = run("solve " + water + " --dump-models --max-models 5");
    CHECK(r.exit_code == 0);
    size_t count = 0;
    size_t pos = 0;
    while ((pos = r.output.find("{\"", pos)) != std::string::npos) {
        ++count;
        pos += 2;
    }
    CHECK(count >= 5);
}

TEST_CASE("water report prints the decoded quantities") {
    RunResult r = run("solve " + water + " --water-report");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("x = (0.91, 0.94, 3.81)") != std::string::npos);
    CHECK(r.output.find("T(X) = 33.1") != std::string::npos);
}

TEST_CASE("epsilon can come from the environment") {
    RunResult r = run("solve " + water + " --epsilon 1e-6");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("models: 38") != std::string::npos);
}

TEST_CASE("FASO_EPSILON environment variable mirrors --epsilon") {
    RunResult r = run_env("FASO_EPSILON=1e-6", "solve " + water + " --json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"optimal\":[1]") != std::string::npos);
}
