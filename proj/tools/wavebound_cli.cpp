#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "wavebound/errors.hpp"
#include "wavebound/parallel.hpp"
#include "wavebound/scenario.hpp"

namespace fs = std::filesystem;
using namespace wavebound;

namespace {

struct Flags {
    std::string config;
    std::string out;
    int threads = 0;
    std::optional<std::uint64_t> seed;
};

void add_flags(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--config", f.config, "scenario JSON file")->required();
    cmd->add_option("--out", f.out, "output directory (default: config output_dir or .)");
    cmd->add_option("--threads", f.threads, "worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", f.seed, "seed for randomized sampling (overrides config)");
}

int run(const std::string& name, const Flags& f)
{
    try {
        ScenarioConfig cfg = load_config(f.config);
        if (f.seed) cfg.seed = *f.seed;
        set_thread_count(f.threads);
        CommandOutput out = name == "check-geometry" ? cmd_check_geometry(cfg)
                            : name == "solve"        ? cmd_solve(cfg)
                            : name == "validate"     ? cmd_validate(cfg)
                                                     : cmd_green_dump(cfg);
        const fs::path dir = !f.out.empty() ? fs::path(f.out) : !cfg.output_dir.empty() ? fs::path(cfg.output_dir) : ".";
        fs::create_directories(dir);
        for (const auto& file : out.files) {
            std::ofstream os(dir / file.name, std::ios::binary);
            os << file.content;
            if (!os) throw Error("cannot write " + (dir / file.name).string());
            std::cout << "wrote " << (dir / file.name).string() << "\n";
        }
        for (const auto& m : out.messages) std::cerr << m << "\n";
        return out.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Submerged-body water-wave solver and bound validation"};
    app.require_subcommand(1);
    Flags flags;
    const char* names[] = {"check-geometry", "solve", "validate", "green-dump"};
    const char* help[] = {"check geometric conditions, epsilon search and uniqueness criterion",
                          "solve the boundary value problem and extract scattering coefficients",
                          "compute norms, identity residuals and bound ratios over a sweep",
                          "write the source potential on a grid as CSV"};
    for (int i = 0; i < 4; ++i) add_flags(app.add_subcommand(names[i], help[i]), flags);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
    return run(app.get_subcommands().front()->get_name(), flags);
}
