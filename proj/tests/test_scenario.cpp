#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "wavebound/errors.hpp"
#include "wavebound/scenario.hpp"

using namespace wavebound;

namespace {

json base()
{
    return json::parse(R"({
        "body": {"kind": "circle", "center": [0, 2], "radius": 1},
        "nu": 1,
        "panels": 32,
        "data": {"g1": {"sources": [{"position": [0.4, 2.3], "strength": 1}]}}
    })");
}

std::string config_error_path(const json& doc)
{
    try {
        parse_config(doc);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<none>";
}

const OutputFile& file(const CommandOutput& out, const std::string& name)
{
    for (const auto& f : out.files)
        if (f.name == name) return f;
    throw std::runtime_error("missing output " + name);
}

}  // namespace

TEST(Config, ParsesDefaults)
{
    const auto cfg = parse_config(base());
    EXPECT_EQ(cfg.panels, 32);
    EXPECT_EQ(cfg.nu, 1.0);
    EXPECT_TRUE(std::holds_alternative<MaxFeasible>(cfg.epsilon));
    EXPECT_TRUE(std::holds_alternative<SourceField>(cfg.data.g1));
    EXPECT_EQ(cfg.validate.green_tolerance, 1e-4);
    EXPECT_FALSE(cfg.sweep_nu.has_value());
}

TEST(Config, RejectsBadInputWithPath)
{
    auto doc = base();
    doc["colour"] = "red";
    EXPECT_EQ(config_error_path(doc), "colour");

    doc = base();
    doc.erase("nu");
    EXPECT_EQ(config_error_path(doc), "nu");

    doc = base();
    doc["panels"] = 8;
    EXPECT_EQ(config_error_path(doc), "panels");

    doc = base();
    doc["panels"] = 34 + 1;
    EXPECT_EQ(config_error_path(doc), "panels");

    doc = base();
    doc["body"]["semiaxes"] = json::array({1, 2});
    EXPECT_EQ(config_error_path(doc), "body.semiaxes");

    doc = base();
    doc["data"]["g1"]["profile"] = "cos";
    EXPECT_NE(config_error_path(doc), "<none>");

    doc = base();
    doc["validate"] = {{"thresholds", {{"energy", -1}}}};
    EXPECT_EQ(config_error_path(doc), "validate.thresholds.energy");

    doc = base();
    doc["conditions"] = json::array({"condition3"});
    EXPECT_NE(config_error_path(doc), "<none>");
}

TEST(Config, ComplexForms)
{
    EXPECT_EQ(complex_from_json(json(2.5), "z"), cplx(2.5, 0.0));
    EXPECT_EQ(complex_from_json(json::array({1, -3}), "z"), cplx(1.0, -3.0));
    EXPECT_THROW(complex_from_json(json::array({1, 2, 3}), "z"), ConfigError);
    EXPECT_THROW(complex_from_json(json("i"), "z"), ConfigError);
    EXPECT_EQ(to_json(cplx(1.0, 2.0)), json::array({1.0, 2.0}));
}

TEST(CheckGeometry, CenteredCirclePasses)
{
    auto doc = base();
    doc["conditions"] = json::array({"condition1", "condition2"});
    const auto out = cmd_check_geometry(parse_config(doc));
    EXPECT_EQ(out.exit_code, exit_ok);
    EXPECT_TRUE(out.report["all_hold"].get<bool>());
    EXPECT_NEAR(out.report["cases"][0]["epsilon_search"]["epsilon"].get<double>(), 1.0, 1e-8);
}

TEST(CheckGeometry, OffsetCircleFailsConditionOne)
{
    auto doc = base();
    doc["body"]["center"] = json::array({0.5, 2});
    const auto out = cmd_check_geometry(parse_config(doc));
    EXPECT_EQ(out.exit_code, exit_condition_failed);
    EXPECT_FALSE(out.messages.empty());
}

TEST(CheckGeometry, UniquenessRequestedAtHighFrequencyFails)
{
    auto doc = base();
    doc["nu"] = 5;
    doc["conditions"] = json::array({"uniqueness"});
    EXPECT_EQ(cmd_check_geometry(parse_config(doc)).exit_code, exit_condition_failed);
    doc["nu"] = 0.01;
    EXPECT_EQ(cmd_check_geometry(parse_config(doc)).exit_code, exit_ok);
}

TEST(Solve, OracleBlockForSourceData)
{
    auto doc = base();
    doc["panels"] = 128;
    doc["probes"] = json::array({json::array({3, 1})});
    const auto out = cmd_solve(parse_config(doc));
    EXPECT_EQ(out.exit_code, exit_ok);
    EXPECT_LE(out.report["oracle"]["d_error"].get<double>(), 1e-8);
    EXPECT_LE(out.report["oracle"]["probe_max_error"].get<double>(), 1e-6);
}

TEST(Solve, DisagreementMapsToExitThree)
{
    auto doc = base();
    doc["panels"] = 16;
    doc["extraction_tolerance"] = 1e-300;
    const auto out = cmd_solve(parse_config(doc));
    EXPECT_EQ(out.exit_code, exit_extraction_disagreement);
}

TEST(Solve, Deterministic)
{
    const auto cfg = parse_config(base());
    const auto a = cmd_solve(cfg), b = cmd_solve(cfg);
    EXPECT_EQ(file(a, "solve.json").content, file(b, "solve.json").content);
}

TEST(Validate, EmptySweepGivesHeaderOnlyCsv)
{
    auto doc = base();
    doc["sweep"] = {{"nu", json::array()}};
    doc["validate"] = {{"qform_samples", 0}};
    const auto out = cmd_validate(parse_config(doc));
    EXPECT_EQ(out.exit_code, exit_ok);
    const std::string& csv = file(out, "validate.csv").content;
    EXPECT_EQ(csv.rfind(csv_version_line, 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(Validate, FailingConditionTwoReportsNotApplicable)
{
    auto doc = base();
    doc["body"] = {{"kind", "ellipse"}, {"center", {0, 2}}, {"semiaxes", {1.0, 0.6}}};
    doc["data"] = {{"g1", {{"profile", "constant"}}}};
    doc["validate"] = {{"qform_samples", 100}};
    const auto out = cmd_validate(parse_config(doc));
    EXPECT_EQ(out.exit_code, exit_ok);
    const auto& c = out.report["cases"][0];
    EXPECT_FALSE(c["condition2"].get<bool>());
    EXPECT_EQ(c["bound"], json("not-applicable"));
    const std::string& csv = file(out, "validate.csv").content;
    EXPECT_NE(csv.find("not-applicable"), std::string::npos);
    EXPECT_NE(csv.find("warning: condition 2 fails"), std::string::npos);
}

TEST(Validate, TinyThresholdBreachesAndIsDeterministic)
{
    auto doc = base();
    doc["validate"] = {{"qform_samples", 200}, {"thresholds", {{"energy", 1e-300}}}};
    doc["seed"] = 7;
    const auto cfg = parse_config(doc);
    const auto a = cmd_validate(cfg), b = cmd_validate(cfg);
    EXPECT_EQ(a.exit_code, exit_residual_breach);
    EXPECT_EQ(file(a, "validate.csv").content, file(b, "validate.csv").content);
    EXPECT_EQ(file(a, "validate.json").content, file(b, "validate.json").content);
    EXPECT_EQ(a.report["qform"][0]["seed"].get<int>(), 7);
}

TEST(GreenDump, GridSkipsSource)
{
    auto doc = json::parse(R"({"nu": 1, "green": {"source": [0, 2], "x1": {"min": -1, "max": 1, "count": 3},
                                 "x2": {"min": 0, "max": 2, "count": 3}}})");
    const auto out = cmd_green_dump(parse_config(doc));
    const std::string& csv = file(out, "green.csv").content;
    // three header lines plus 9 grid points less the source
    std::size_t rows = 0;
    for (std::size_t p = 0; (p = csv.find('\n', p)) != std::string::npos; ++p) ++rows;
    EXPECT_NE(csv.find("x1,x2,re,im,d1_re,d1_im,d2_re,d2_im"), std::string::npos);
    EXPECT_EQ(csv.find("\n0,2,"), std::string::npos);
    EXPECT_EQ(rows, 11u);
    EXPECT_EQ(out.report["points"].get<int>(), 8);
}

TEST(ExitCodes, ErrorMapping)
{
    EXPECT_EQ(exit_code_for(ConfigError("nu", "required")), exit_usage);
    EXPECT_EQ(exit_code_for(GeometryError("x")), exit_usage);
    EXPECT_EQ(exit_code_for(SolverError("x")), exit_condition_failed);
    EXPECT_EQ(exit_code_for(ExtractionError("x", 1.0)), exit_extraction_disagreement);
}

TEST(Config, ParserAgreesWithSchemaFixtures)
{
    namespace fs = std::filesystem;
    int seen = 0;
    for (const char* dir : {WAVEBOUND_TEST_CONFIGS, WAVEBOUND_SCENARIOS})
        for (const auto& e : fs::directory_iterator(dir)) {
            if (e.path().extension() != ".json") continue;
            ++seen;
            const bool invalid = e.path().filename().string().rfind("invalid_", 0) == 0;
            if (invalid)
                EXPECT_THROW(load_config(e.path()), ConfigError) << e.path();
            else
                EXPECT_NO_THROW(load_config(e.path())) << e.path();
        }
    EXPECT_GE(seen, 10);
}
