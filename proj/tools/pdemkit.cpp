// pdemkit: build PDEM targets from trigonometric references and check them.
//
//   pdemkit verify --config samples/configs/instance_c.cfg --format json

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdem/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Position-dependent-mass targets from STP/SCP/PTP references"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    std::string format;
    std::optional<int> levels;
    bool eighth = false;
    app.add_option("--config", config_path, "run configuration (key = value lines)")->required();
    app.add_option("--output", output_path, "write the report here instead of stdout");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--levels", levels, "number of levels K")->check(CLI::Range(1, 64));
    app.add_flag("--debug-correction-eighth", eighth,
                 "use 1/(8m) in the mass correction (expected to fail verification)");

    std::string tag;
    auto* validate = app.add_subcommand("validate", "check parameters and the strict relation");
    auto* spectrum = app.add_subcommand("spectrum", "analytic energy table");
    auto* build = app.add_subcommand("build-target", "sample m, f, U_target and the transported states");
    auto* verify = app.add_subcommand("verify", "numerical isospectrality and state checks");
    auto* compare = app.add_subcommand("compare-paper", "engine potential against a published form");
    compare->add_option("tag", tag, "Eq14, Eq19, Eq24, Eq27, Eq28, Eq29, Eq32, Eq33 or Eq34")->required();
    for (auto* sub : {validate, spectrum, build, verify, compare}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : pdem::exit_invalid;
    }

    pdem::RunConfig cfg;
    const int load = pdem::run_guarded(std::cerr, [&] {
        cfg = pdem::load_config(config_path);
        return pdem::exit_ok;
    });
    if (load != pdem::exit_ok) return load;
    if (!format.empty()) cfg.format = pdem::parse_format(format);
    if (!output_path.empty()) cfg.output_path = output_path;
    if (levels) cfg.levels = *levels;

    std::ofstream file;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write '" << cfg.output_path << "'\n";
            return pdem::exit_invalid;
        }
    }
    pdem::CommandContext ctx{file.is_open() ? static_cast<std::ostream&>(file) : std::cout, std::cerr,
                             eighth ? pdem::CorrectionConvention::eighth
                                    : pdem::CorrectionConvention::quarter};

    if (*validate) return pdem::cmd_validate(cfg, ctx);
    if (*spectrum) return pdem::cmd_spectrum(cfg, ctx);
    if (*build) return pdem::cmd_build_target(cfg, ctx);
    if (*verify) return pdem::cmd_verify(cfg, ctx);
    return pdem::cmd_compare_paper(cfg, tag, ctx);
}
