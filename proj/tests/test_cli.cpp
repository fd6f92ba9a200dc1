#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "cli.hpp"

using namespace galerkin::cli;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "galerkin_lab");
    std::ostringstream out;
    std::ostringstream err;
    const int code = main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
}

std::size_t columns(const std::string& line) {
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, EmptyArgvPrintsUsage) {
    const CliRun r = run_cli({});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE((r.out + r.err).find("cond-table"), std::string::npos);
    EXPECT_NE((r.out + r.err).find("wing"), std::string::npos);
}

TEST(Cli, WingBreakpointGuard) {
    const CliRun r = run_cli({"wing", "--t1", "0.5", "--t2", "0.3"});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("t1 must be smaller than t2"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ValidationErrors) {
    EXPECT_EQ(run_cli({"wing", "--bogus"}).code, kExitValidation);
    EXPECT_EQ(run_cli({"nosuch"}).code, kExitValidation);
    EXPECT_EQ(run_cli({"cond-table", "--n-max", "13"}).code, kExitValidation);
    EXPECT_EQ(run_cli({"bvp", "--family", "box"}).code, kExitValidation);
    EXPECT_EQ(run_cli({"bvp", "--f", "nosuch"}).code, kExitValidation);
    EXPECT_EQ(run_cli({"bvp", "--format", "xml"}).code, kExitValidation);
    EXPECT_EQ(run_cli({"nonlinear", "--m-list", "4,2"}).code, kExitValidation);
    EXPECT_EQ(run_cli({"nonlinear", "--f-file", "/nonexistent/f.txt"}).code, kExitValidation);
    EXPECT_EQ(run_cli({"fredholm2", "--lambda", "0"}).code, kExitValidation);
}

TEST(Cli, NumericalFailureExitCode) {
    // pi is an eigenvalue of the cos kernel
    EXPECT_EQ(run_cli({"fredholm2", "--lambda", "3.141592653589793"}).code, kExitNumerical);
    EXPECT_EQ(run_cli({"nonlinear", "--m", "4", "--max-iters", "1"}).code, kExitNumerical);
}

TEST(Cli, CondTableRows) {
    const CliRun r = run_cli({"cond-table", "--n-max", "10"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const std::vector<std::string> l = lines(r.out);
    ASSERT_EQ(l.size(), 9u);
    EXPECT_EQ(l[0], "N,cond2");
    EXPECT_EQ(l[1].substr(0, 2), "3,");
    EXPECT_NEAR(std::stod(l[1].substr(2)), 891.6637, 5.0);
}

TEST(Cli, CsvColumnCountsAreConstant) {
    const std::vector<std::vector<std::string>> invocations = {
        {"cond-table"},
        {"bvp", "--family", "monomial", "--n", "5"},
        {"kernel", "--n", "5", "--grid", "3"},
        {"kernel", "--x", "0.5", "--t", "0.5", "--n", "1"},
        {"fredholm2", "--kernel", "separable", "--lambda", "3"},
        {"wing"},
        {"wing", "--n", "6", "--vectors"},
        {"nonlinear", "--m", "4"},
    };
    for (const auto& args : invocations) {
        const CliRun r = run_cli(args);
        ASSERT_EQ(r.code, kExitOk) << args[0] << ": " << r.err;
        const std::vector<std::string> l = lines(r.out);
        ASSERT_GE(l.size(), 2u) << args[0];
        for (const std::string& row : l) EXPECT_EQ(columns(row), columns(l[0])) << args[0] << ": " << row;
    }
}

TEST(Cli, KernelPointValue) {
    const CliRun r = run_cli({"kernel", "--x", "0.5", "--t", "0.5", "--n", "1"});
    ASSERT_EQ(r.code, kExitOk);
    const std::vector<std::string> l = lines(r.out);
    ASSERT_EQ(l.size(), 2u);
    const double k = std::stod(l[1].substr(l[1].rfind(',') + 1));
    EXPECT_NEAR(k, 0.2026424, 1e-7);
}

TEST(Cli, WingJsonHasExactSolution) {
    const CliRun r = run_cli({"wing", "--n", "3", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["command"], "wing");
    ASSERT_TRUE(doc.contains("x_exact"));
    EXPECT_NEAR(doc["x_exact"][1].get<double>(), 0.57735, 1e-5);
    EXPECT_EQ(doc["x_exact"][0].get<double>(), 0.0);
}

TEST(Cli, WingVectorsCsv) {
    const CliRun r = run_cli({"wing", "--n", "3", "--vectors"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const std::vector<std::string> l = lines(r.out);
    ASSERT_EQ(l.size(), 4u);
    EXPECT_EQ(l[0], "i,s,b,x_exact,x_naive,x_tsvd");
    std::istringstream row(l[2]);
    std::string cell;
    for (int c = 0; c < 4; ++c) std::getline(row, cell, ',');
    EXPECT_NEAR(std::stod(cell), 0.57735, 1e-5);
}

TEST(Cli, NonlinearJson) {
    const CliRun r = run_cli({"nonlinear", "--lambda", "1", "--f", "manufactured", "--m", "5", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["m"].size(), 5u);
    for (const auto& it : doc["newton_iters"]) EXPECT_LE(it.get<int>(), 20);
    for (const auto& res : doc["residual_norm"]) EXPECT_LE(res.get<double>(), 1e-12);
    EXPECT_NEAR(doc["norm_xi"].back().get<double>(), 2.2214414690791831, 1e-8);
    EXPECT_NEAR(doc["apriori_radius"].get<double>(), 2.4101, 1e-4);
}

TEST(Cli, Fredholm2Csv) {
    const CliRun r = run_cli({"fredholm2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const std::vector<std::string> l = lines(r.out);
    ASSERT_EQ(l.size(), 10u);
    EXPECT_EQ(l[0], "j,re,im");
    EXPECT_EQ(l[6].substr(0, 2), "1,");
    EXPECT_NEAR(std::stod(l[6].substr(2)), 1.0 / (2.0 - 3.141592653589793), 1e-10);
}

TEST(Cli, BvpFromTabulatedForcing) {
    const std::filesystem::path p = std::filesystem::temp_directory_path() / "galerkin_cli_f.txt";
    {
        std::ofstream f(p);
        f << "# constant forcing\n0 1\n0.5 1\n1 1\n";
    }
    const CliRun file = run_cli({"bvp", "--family", "monomial", "--n", "3", "--f-file", p.string()});
    const CliRun named = run_cli({"bvp", "--family", "monomial", "--n", "3", "--f", "one"});
    std::filesystem::remove(p);
    ASSERT_EQ(file.code, kExitOk) << file.err;
    EXPECT_EQ(file.out, named.out);
}

TEST(Cli, OutputFileAndMatrixExport) {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "galerkin_cli_out";
    std::filesystem::create_directories(dir);
    const CliRun r = run_cli({"wing", "--n", "4", "-o", (dir / "wing.csv").string(), "--export-matrix",
                           (dir / "a.txt").string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(lines(slurp(dir / "wing.csv")).size(), 2u);
    const std::vector<std::string> a = lines(slurp(dir / "a.txt"));
    ASSERT_EQ(a.size(), 4u);
    for (const std::string& row : a) EXPECT_EQ(std::count(row.begin(), row.end(), ' '), 3);
    std::filesystem::remove_all(dir);
}

TEST(Cli, DeterministicAndMatchesGolden) {
    const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
        {"cond_table.csv", {"cond-table"}},
        {"wing_n10.csv", {"wing", "--n", "10"}},
        {"nonlinear.csv", {"nonlinear"}},
    };
    for (const auto& [golden, args] : cases) {
        const CliRun a = run_cli(args);
        const CliRun b = run_cli(args);
        ASSERT_EQ(a.code, kExitOk) << a.err;
        EXPECT_EQ(a.out, b.out);
        EXPECT_EQ(a.out, slurp(std::filesystem::path(GALERKIN_GOLDEN_DIR) / golden)) << golden;
    }
}

TEST(Cli, ExecutableExitCodes) {
    const std::string exe = GALERKIN_LAB_EXE;
    auto status = [](const std::string& cmd) {
        const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status(exe), kExitValidation);
    EXPECT_EQ(status(exe + " cond-table --n-max 4"), kExitOk);
    EXPECT_EQ(status(exe + " wing --t1 0.5 --t2 0.3"), kExitValidation);
}
