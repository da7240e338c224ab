#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path workdir{WAVEBOUND_WORKDIR};
const fs::path scenarios{WAVEBOUND_SCENARIOS};

int run(const std::string& args, const fs::path& out = {})
{
    std::string cmd = std::string(WAVEBOUND_CLI) + " " + args;
    if (!out.empty()) cmd += " --out " + out.string();
    cmd += " >" + (workdir / "stdout.txt").string() + " 2>" + (workdir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const std::string& name, const std::string& body)
{
    fs::create_directories(workdir);
    const fs::path p = workdir / name;
    std::ofstream(p) << body;
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* small_solve = R"({
  "body": {"kind": "circle", "center": [0, 2], "radius": 1},
  "nu": 1,
  "panels": 32,
  "data": {"g1": {"sources": [{"position": [0.4, 2.3], "strength": 1}]}})";

}  // namespace

class Cli : public ::testing::Test {
protected:
    void SetUp() override { fs::create_directories(workdir); }
};

TEST_F(Cli, HelpAndUsage)
{
    EXPECT_EQ(run("--help"), 0);
    EXPECT_EQ(run(""), 1);
    EXPECT_EQ(run("frobnicate"), 1);
    EXPECT_EQ(run("solve"), 1);
    EXPECT_EQ(run("solve --config " + (workdir / "missing.json").string()), 1);
}

TEST_F(Cli, ConfigErrorNamesThePath)
{
    const auto cfg = write_config("bad.json", R"({"nu": 1, "panels": 9})");
    EXPECT_EQ(run("solve --config " + cfg.string()), 1);
    EXPECT_NE(slurp(workdir / "stderr.txt").find("panels"), std::string::npos);
}

TEST_F(Cli, CheckGeometryExitCodes)
{
    const fs::path out = workdir / "check";
    EXPECT_EQ(run("check-geometry --config " + (scenarios / "circle_check.json").string(), out), 0);
    EXPECT_TRUE(fs::exists(out / "check-geometry.json"));
    EXPECT_EQ(run("check-geometry --config " + (scenarios / "offset_circle_check.json").string(), out), 2);
}

TEST_F(Cli, SolveExitCodes)
{
    const fs::path out = workdir / "solve";
    const auto ok = write_config("solve_ok.json", std::string(small_solve) + "}");
    EXPECT_EQ(run("solve --threads 1 --config " + ok.string(), out), 0);
    EXPECT_NE(slurp(out / "solve.json").find("\"oracle\""), std::string::npos);
    const auto strict = write_config("solve_strict.json", std::string(small_solve) + R"(, "extraction_tolerance": 1e-300})");
    EXPECT_EQ(run("solve --config " + strict.string(), out), 3);
    const auto inside = write_config("solve_inside.json", std::string(small_solve) + R"(, "probes": [[0, 2]]})");
    EXPECT_EQ(run("solve --config " + inside.string(), out), 1);
}

TEST_F(Cli, ValidateExitCodesAndSeed)
{
    const fs::path out = workdir / "validate";
    const auto ok = write_config("validate_ok.json", std::string(small_solve) + R"(, "validate": {"qform_samples": 100}})");
    EXPECT_EQ(run("validate --seed 5 --config " + ok.string(), out), 0);
    const std::string csv = slurp(out / "validate.csv");
    EXPECT_EQ(csv.rfind("# wavebound-report v1\n", 0), 0u);
    EXPECT_NE(slurp(out / "validate.json").find("\"seed\": 5"), std::string::npos);

    const auto breach = write_config("validate_breach.json",
                                     std::string(small_solve) +
                                         R"(, "extraction_tolerance": 1e-300, "validate": {"qform_samples": 0, "thresholds": {"green": 1e-300, "energy": 1e-300, "intid": 1e-300}}})");
    EXPECT_EQ(run("validate --config " + breach.string(), out), 4);
    const auto disagree = write_config("validate_disagree.json",
                                       std::string(small_solve) + R"(, "extraction_tolerance": 1e-300, "validate": {"qform_samples": 0}})");
    EXPECT_EQ(run("validate --config " + disagree.string(), out), 3);
}

TEST_F(Cli, GreenDump)
{
    const fs::path out = workdir / "green";
    EXPECT_EQ(run("green-dump --config " + (scenarios / "green_grid.json").string(), out), 0);
    EXPECT_NE(slurp(out / "green.csv").find("x1,x2,re,im"), std::string::npos);
}
