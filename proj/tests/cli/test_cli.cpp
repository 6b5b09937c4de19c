// End-to-end checks of the rotsurf4 binary: exit codes, output shape, and
// run-to-run determinism. The binary path comes in through ROTSURF4_BIN.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_tool(const std::string& args) {
    const std::string cmd = std::string(ROTSURF4_BIN) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

} // namespace

TEST_CASE("bicomplex calculator round trip") {
    const RunResult mul = run_tool("bicomplex mul \"1+1i\" \"1+1j\"");
    CHECK(mul.exit_code == 0);
    CHECK(mul.out == "1+1i+1j+1ij\n");

    const RunResult conj = run_tool("bicomplex conj \"1+2i+3j+4ij\" t1");
    CHECK(conj.exit_code == 0);
    CHECK(conj.out == "1-2i+3j-4ij\n");

    const RunResult mat = run_tool("bicomplex matrix \"1i\"");
    CHECK(mat.exit_code == 0);
    CHECK(mat.out == "0 -1 0 0\n1 0 0 0\n0 0 0 -1\n0 0 1 0\n");

    const RunResult inv = run_tool("bicomplex inv \"2\"");
    CHECK(inv.exit_code == 0);
    CHECK(inv.out == "0.5\n");
}

TEST_CASE("exit code 3 on zero divisors") {
    const RunResult res = run_tool("bicomplex inv \"1+1ij\"");
    CHECK(res.exit_code == 3);
    CHECK(res.out.empty());
}

TEST_CASE("exit code 2 on malformed input") {
    CHECK(run_tool("analyze --profile \"family:circl(lambda=1)\"").exit_code == 2);
    CHECK(run_tool("bicomplex mul \"1+2k\" \"1\"").exit_code == 2);
    CHECK(run_tool("analyze --profile clifford --grid 1x4").exit_code == 2);
    CHECK(run_tool("nonsense-subcommand").exit_code == 2);
    CHECK(run_tool("").exit_code == 2);
    CHECK(run_tool("classify --profile \"family:vranceanu(k=0.3)\"").exit_code == 2);
}

TEST_CASE("version flag") {
    const RunResult res = run_tool("--version");
    CHECK(res.exit_code == 0);
    CHECK(res.out == "1.0.0\n");
}

TEST_CASE("classify reports the flat circle surface as first kind") {
    const std::string args = "classify --profile clifford --grid 6x6 --step 1e-3";
    const RunResult res = run_tool(args);
    REQUIRE(res.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(res.out);
    CHECK(doc["schema"] == "rotsurf4/report/v1");
    CHECK(doc["command"] == "classify");
    CHECK(doc["classification"]["kind"] == "first");
    CHECK(std::fabs(doc["classification"]["f_mean"].get<double>() - 4.0) <= 1e-4);
    CHECK(doc["classification"]["norm_C"].get<double>() <= 1e-4);
    CHECK(doc["flat_check"]["applicable"] == true);
    CHECK(doc["flat_check"]["agree"] == true);

    // byte-identical on a rerun
    const RunResult again = run_tool(args);
    CHECK(again.exit_code == 0);
    CHECK(again.out == res.out);
}

TEST_CASE("group-check flags the radius-2 circle") {
    const RunResult res =
        run_tool("group-check --surface \"circle(lambda=2,b0=0.5,d=0)\" --grid 4x4");
    REQUIRE(res.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(res.out);
    CHECK(doc["group_check"]["closure_pass"] == false);
    CHECK(doc["group_check"]["pass"] == false);
    CHECK(doc["group_check"]["closure_residual"].get<double>() >= 1.0);
    CHECK(doc["subgroup_verdict"]["pass"] == false);
    CHECK(doc["agree"] == true);
    CHECK(doc["hyperquadric"]["all_member"] == true);
}

TEST_CASE("laplacian csv has the full column set") {
    const RunResult res =
        run_tool("laplacian --profile clifford --grid 4x4 --format csv --step 1e-3");
    REQUIRE(res.exit_code == 0);
    const std::vector<std::string> lines = lines_of(res.out);
    REQUIRE(lines.size() == 17); // header + 16 rows
    CHECK(lines[0] ==
          "s,t,closed_12,closed_13,closed_14,closed_23,closed_24,closed_34,"
          "numeric_12,numeric_13,numeric_14,numeric_23,numeric_24,numeric_34,discrepancy");
}

TEST_CASE("analyze handles raw parametrizations and reparametrization") {
    const RunResult raw =
        run_tool("analyze --profile \"family:vranceanu(k=0.3)\" --grid 3x3 --step 1e-3");
    REQUIRE(raw.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(raw.out);
    CHECK(doc["config"]["unit_speed"] == false);
    CHECK(doc["summary"]["closed_form_available"] == false);
    CHECK(doc["summary"]["max_abs_K_numeric"].get<double>() <= 1e-5);

    const RunResult rep = run_tool(
        "analyze --profile \"family:vranceanu(k=0.3)\" --reparametrize --grid 3x3 --step 1e-3");
    REQUIRE(rep.exit_code == 0);
    const nlohmann::json doc2 = nlohmann::json::parse(rep.out);
    CHECK(doc2["config"]["reparametrized"] == true);
    CHECK(doc2["summary"]["closed_form_available"] == true);
    CHECK(doc2["summary"]["max_abs_K_closed"].get<double>() <= 1e-10);
}
