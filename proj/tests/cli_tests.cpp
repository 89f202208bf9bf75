// Integration tests for the ktcli binary: exit codes, golden stdout
// bytes, JSON report schema, and byte-for-byte determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <array>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(KTCLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) {
    return std::string(KT_SOURCE_DIR) + "/samples/" + name;
}

std::string testing_tmpdir() {
    const char* t = std::getenv("TMPDIR");
    return t ? t : "/tmp";
}

std::string golden(const std::string& name) {
    std::ifstream in(std::string(KT_SOURCE_DIR) + "/tests/golden/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("el matches golden output") {
    RunResult r = run_cli("el " + sample("free_scalar.kt"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("el_free_scalar.txt"));

    RunResult bf = run_cli("el " + sample("bf2.kt"));
    CHECK(bf.exit_code == 0);
    CHECK(bf.out == golden("el_bf2.txt"));
}

TEST_CASE("check passes on the bf3 sample and matches golden output") {
    RunResult r = run_cli("check " + sample("bf3.kt"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("check_bf3.txt"));
}

TEST_CASE("check fails with exit 1 and a residual on the corrupted sample") {
    RunResult r = run_cli("check " + sample("bf3_corrupt.kt"));
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("fail") != std::string::npos);
    CHECK(r.out.find("residual:") != std::string::npos);
    CHECK(r.out.find("2*Bbar[1,2]_(1,2)") != std::string::npos);
}

TEST_CASE("search matches golden output and finds nothing for the free scalar") {
    RunResult r = run_cli("search " + sample("bf2.kt") + " --jet-order 1 --degree 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("search_bf2.txt"));

    RunResult empty = run_cli("search " + sample("free_scalar.kt") + " --jet-order 2 --degree 1");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out.find("dim=0") != std::string::npos);
}

TEST_CASE("bf subcommand matches golden output and is deterministic") {
    RunResult first = run_cli("bf --dim 2");
    CHECK(first.exit_code == 0);
    CHECK(first.out == golden("bf_dim2.txt"));
    RunResult second = run_cli("bf --dim 2");
    CHECK(second.out == first.out);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("el /nonexistent/path.kt").exit_code == 2);
    CHECK(run_cli("bf --dim 99").exit_code == 2);
    CHECK(run_cli("bf").exit_code == 2); // --dim is required
}

TEST_CASE("parse diagnostics exit with code 2 and cite the location") {
    std::string bad = std::string(::testing_tmpdir()) + "/ktcli_bad_model.kt";
    {
        std::ofstream out(bad, std::ios::binary);
        out << "base_dim 2;\nfield y even;\nlagrangian d(3, y);\n";
    }
    RunResult r = run_cli("el " + bad);
    CHECK(r.exit_code == 2);
    std::remove(bad.c_str());
}

TEST_CASE("json report carries the versioned schema") {
    std::string path = std::string(::testing_tmpdir()) + "/ktcli_report.json";
    RunResult r = run_cli("--json " + path + " bf --dim 2");
    CHECK(r.exit_code == 0);
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["schema"] == 1);
    CHECK(j["tool_version"].is_string());
    CHECK(j["model_hash"].is_string());
    REQUIRE(j["checks"].is_array());
    CHECK(j["checks"].size() == 8);
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("status"));
        CHECK(c.contains("residual"));
        CHECK(c.contains("timing_ms"));
    }
    CHECK(j["counts"]["pass"] == 8);
    CHECK(j["counts"]["fail"] == 0);
    std::remove(path.c_str());
}

TEST_CASE("el json report lists one entry per component") {
    std::string path = std::string(::testing_tmpdir()) + "/ktcli_el.json";
    RunResult r = run_cli("--json " + path + " el " + sample("bf2.kt"));
    CHECK(r.exit_code == 0);
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    nlohmann::json j = nlohmann::json::parse(in);
    REQUIRE(j["checks"].size() == 3);
    CHECK(j["checks"][0]["name"] == "el/A");
    CHECK(j["checks"][1]["name"] == "el/B[1]");
    CHECK(j["checks"][1]["data"][0] == "1*A_(2)");
    std::remove(path.c_str());
}

TEST_CASE("json reports are deterministic once timing is stripped") {
    std::string a = std::string(::testing_tmpdir()) + "/ktcli_a.json";
    std::string b = std::string(::testing_tmpdir()) + "/ktcli_b.json";
    run_cli("--json " + a + " check " + sample("bf3.kt"));
    run_cli("--json " + b + " check " + sample("bf3.kt"));
    std::ifstream fa(a), fb(b);
    nlohmann::json ja = nlohmann::json::parse(fa);
    nlohmann::json jb = nlohmann::json::parse(fb);
    for (auto* j : {&ja, &jb})
        for (auto& c : (*j)["checks"]) c.erase("timing_ms");
    CHECK(ja == jb);
    std::remove(a.c_str());
    std::remove(b.c_str());
}
