#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wavebound/boundary_data.hpp"
#include "wavebound/conditions.hpp"
#include "wavebound/constants.hpp"
#include "wavebound/geometry.hpp"
#include "wavebound/greens.hpp"
#include "wavebound/solver.hpp"
#include "wavebound/validation.hpp"

namespace wavebound {

using json = nlohmann::json;

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_condition_failed = 2,
    exit_extraction_disagreement = 3,
    exit_residual_breach = 4,
};

struct ValidateSpec {
    int level = 0;
    double R = 0.0;  // 0: default truncation
    CutoffKind cutoff = CutoffKind::piecewise_quadratic;
    std::size_t qform_samples = 10000;
    double green_tolerance = 1e-4;
    double energy_tolerance = 1e-3;
    double intid_tolerance = 1e-3;
};

struct GreenDumpSpec {
    Vec2 source{0.0, 2.0};
    double x1_min = -5.0, x1_max = 5.0;
    int x1_count = 101;
    double x2_min = 0.0, x2_max = 5.0;
    int x2_count = 51;
    GreenMethod method = GreenMethod::closed_form;
};

struct ScenarioConfig {
    ShapeSpec body;
    double nu = 0.0;
    EpsilonPolicy epsilon = MaxFeasible{};
    BoundaryData data;
    int panels = 128;
    std::vector<Vec2> probes;
    std::vector<std::string> conditions{"condition1", "condition2"};
    std::optional<std::vector<double>> sweep_nu;
    std::optional<std::vector<ShapeSpec>> sweep_bodies;
    double extraction_tolerance = 1e-3;
    ValidateSpec validate;
    GreenDumpSpec green;
    std::string output_dir;
    std::uint64_t seed = 0;
};

// Checks every key against the schema in schemas/scenario.schema.json; unknown keys are rejected.
ScenarioConfig parse_config(const json& doc);
ScenarioConfig load_config(const std::filesystem::path& path);

// Complex numbers are written as [re, im] and read from either a number or [re, im].
json to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& path);

json to_json(const ShapeSpec& s);
json to_json(const GeometryBox& b);
json to_json(const ConditionReport& r);
json to_json(const ConstantLedger& l);
json to_json(const ScatteringResult& r);
json to_json(const NormReport& n);
json to_json(const IdentityResiduals& r);
json to_json(const BoundReport& r);

struct OutputFile {
    std::string name;
    std::string content;
};

struct CommandOutput {
    int exit_code = exit_ok;
    json report;
    std::vector<OutputFile> files;
    std::vector<std::string> messages;
};

CommandOutput cmd_check_geometry(const ScenarioConfig& cfg);
CommandOutput cmd_solve(const ScenarioConfig& cfg);
CommandOutput cmd_validate(const ScenarioConfig& cfg);
CommandOutput cmd_green_dump(const ScenarioConfig& cfg);

// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

inline constexpr const char* csv_version_line = "# wavebound-report v1";

}  // namespace wavebound
