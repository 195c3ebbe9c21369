#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rootbound/matrix.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using json = nlohmann::json;
using rootbound::Matrix;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(ROOTBOUND_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::filesystem::path fixture_dir() {
    auto dir = std::filesystem::temp_directory_path() / "rootbound_cli_fixtures";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_fixture(const std::string& name, const std::string& content) {
    auto path = fixture_dir() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

}  // namespace

TEST_CASE("spectral radius of the all-ones matrix is 3") {
    std::string m = write_fixture("j3.txt", "3 3\n1 1 1\n1 1 1\n1 1 1\n");
    CliResult r = run_cli("spectral radius --matrix " + m);
    CHECK(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["command"] == "spectral radius");
    CHECK(std::abs(rep["result"]["value"].get<double>() - 3.0) <= 1e-10);
    CHECK(rep["result"]["method"] == "power");
}

TEST_CASE("upper bound on the 7x7 fixture") {
    std::string c = write_fixture("c7.txt",
                                  "7 7\n"
                                  "2 1 3 3 3 12 0\n"
                                  "4 2 1 4 2 6 4\n"
                                  "2 3 1 4 1 8 3\n"
                                  "3 5 3 1 1 3 4\n"
                                  "5 6 1 1 0 3 3\n"
                                  "0 2 1 2 2 6 0\n"
                                  "2 2 0 2 1 1 4\n");
    std::string p = write_fixture("pi7.json", R"({"n": 7, "blocks": [[1,2,3],[4,5],[6,7]]})");
    CliResult r = run_cli("bound upper --matrix " + c + " --partition " + p);
    CHECK(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(std::abs(rep["result"]["bound"].get<double>() - 18.6936) <= 1e-3);
    CHECK(rep["result"]["equality"] == "strict");
}

TEST_CASE("desk-scale sweep via the CLI") {
    CliResult r = run_cli("verify conjecture-c --n 4 --e 6");
    CHECK(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["result"]["matches_a0"] == true);
    CHECK(rep["result"]["candidates_examined"] == 7);
}

TEST_CASE("matrices printed by the CLI re-parse identically") {
    CliResult r = run_cli("construct a0 --c 3 --t 4 --n 6");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    std::string text = rep["result"]["matrix_text"].get<std::string>();
    std::istringstream in(text);
    Matrix parsed = rootbound::parse_matrix(in);
    CHECK(parsed.rows() == 6);
    CHECK(parsed.sum() == 13.0);
    auto entries = rep["result"]["matrix"];
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            CHECK(parsed(i, j) == entries[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                      .get<double>());
}

TEST_CASE("identical inputs produce byte-identical reports") {
    std::string m = write_fixture("det.txt", "2 2\n0.1 0.7\n0.30000000000000004 1e-3\n");
    CliResult a = run_cli("spectral radius --matrix " + m);
    CliResult b = run_cli("spectral radius --matrix " + m);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
}

TEST_CASE("exit code 2 flags unestablished certificates") {
    std::string nr = write_fixture("nr.txt", "2 2\n0 1\n2 0\n");
    CliResult r = run_cli("rooted-check --matrix " + nr);
    CHECK(r.exit_code == 2);
    json rep = json::parse(r.out);
    CHECK(rep["result"]["rooted"] == false);
    CHECK_FALSE(rep["result"]["violations"].empty());

    // hypotheses too small for the bound
    std::string c = write_fixture("cyc.txt", "2 2\n0 1\n1 0\n");
    std::string p = write_fixture("id2.json", R"({"n": 2, "blocks": [[1],[2]]})");
    std::string m = write_fixture("m_small.txt", "2 2\n0 0.5\n0.5 0\n");
    CliResult rb = run_cli("bound upper --matrix " + c + " --partition " + p + " --m " + m);
    CHECK(rb.exit_code == 2);
    json bep = json::parse(rb.out);
    CHECK(bep["result"]["hypothesis_ok"] == false);
    CHECK(bep["result"]["bound"].is_null());
}

TEST_CASE("exit code 1 names malformed input") {
    CliResult missing = run_cli("spectral radius --matrix /nonexistent/file.txt");
    CHECK(missing.exit_code == 1);

    std::string bad = write_fixture("bad.txt", "2 2\n1 2 3\n");
    CliResult malformed = run_cli("spectral radius --matrix " + bad);
    CHECK(malformed.exit_code == 1);

    std::string m = write_fixture("ok2.txt", "2 2\n1 0\n0 1\n");
    std::string p3 = write_fixture("pi3.json", R"({"n": 3, "blocks": [[1,2],[3]]})");
    CliResult mismatch = run_cli("quotient --matrix " + m + " --partition " + p3);
    CHECK(mismatch.exit_code == 1);
}

TEST_CASE("absent largest real eigenvalue renders as infinity with a warning") {
    std::string rot = write_fixture("rot.txt", "2 2\n0 1\n-1 0\n");
    CliResult r = run_cli("spectral rho-r --matrix " + rot);
    CHECK(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["result"]["value"] == "infinity");
    CHECK(rep["result"]["rooted"] == false);
    CHECK_FALSE(rep["warnings"].empty());
}

TEST_CASE("quotient reports equitability with the block-averaged matrix") {
    std::string c = write_fixture("cstar.txt",
                                  "7 7\n"
                                  "2 2 3 3 3 12 0\n"
                                  "4 2 1 4 2 6 6\n"
                                  "2 3 2 4 2 8 4\n"
                                  "4 5 3 1 1 3 4\n"
                                  "5 6 1 1 1 3 4\n"
                                  "1 2 1 2 2 6 0\n"
                                  "2 2 0 2 2 2 4\n");
    std::string p = write_fixture("pi7b.json", R"({"n": 7, "blocks": [[1,2,3],[4,5],[6,7]]})");
    CliResult r = run_cli("quotient --matrix " + c + " --partition " + p);
    CHECK(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["result"]["equitable"] == true);
    CHECK(rep["result"]["quotient"][0][2].get<double>() == 12.0);
    CHECK(rep["result"]["violations"].empty());
}

TEST_CASE("level bound subcommand, plain and refined") {
    std::string c = write_fixture("lvl.txt",
                                  "4 4\n"
                                  "0.2 0.1 5 5\n"
                                  "0.1 0.2 5 4\n"
                                  "0.1 0.1 4 4\n"
                                  "0.1 0.1 4 3\n");
    CliResult plain = run_cli("bound duan-zhou --matrix " + c + " --ell 3");
    CliResult refined = run_cli("bound duan-zhou --matrix " + c + " --ell 3 --refined");
    REQUIRE(plain.exit_code == 0);
    REQUIRE(refined.exit_code == 0);
    json jp = json::parse(plain.out);
    json jr = json::parse(refined.out);
    CHECK(jr["result"]["bound"].get<double>() < jp["result"]["bound"].get<double>());
    CHECK(jp["result"]["permutation"].size() == 4);
}

TEST_CASE("entry-sum and edge-count bound subcommands") {
    std::string c = write_fixture("hollow5.txt",
                                  "7 7\n"
                                  "0 1 1 1 1 0 0\n"
                                  "1 0 1 1 1 0 0\n"
                                  "1 1 0 1 1 0 0\n"
                                  "1 1 1 0 1 0 0\n"
                                  "1 1 1 1 0 0 0\n"
                                  "0 0 0 0 0 0 0\n"
                                  "0 0 0 0 0 0 0\n");
    CliResult es = run_cli("bound entry-sum --matrix " + c);
    REQUIRE(es.exit_code == 0);
    json je = json::parse(es.out);
    CHECK(je["result"]["bound"].get<double>() == 4.0);
    CHECK(je["result"]["equality"] == true);
    CHECK(je["result"]["k"] == 5);

    CliResult st = run_cli("bound stanley --e 10");
    REQUIRE(st.exit_code == 0);
    CHECK(json::parse(st.out)["result"]["bound"].get<double>() == 4.0);
}

TEST_CASE("zero-trace sweep subcommand with the tiny-order cross-check") {
    CliResult r = run_cli("verify zero-trace --n 3 --e 4 --full");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["result"]["matches_a0"] == true);
    CHECK(rep["result"]["zero_trace"] == true);
    CHECK(std::abs(rep["result"]["full_search_max_rho"].get<double>() -
                   rep["result"]["max_rho"].get<double>()) <= 1e-9);
    CHECK(rep["warnings"].empty());
}
