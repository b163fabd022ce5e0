// sarkit - multistatic OFDM SAR simulation and processing toolkit.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "sarkit/runner.hpp"
#include "sarkit/scenario.hpp"

namespace {

sarkit::cli::Scenario load(const std::string& scenario_path, std::int64_t seed_override) {
    sarkit::cli::Scenario sc = scenario_path.empty()
                                   ? sarkit::cli::parse_scenario("", "<defaults>")
                                   : sarkit::cli::load_scenario(scenario_path);
    if (seed_override >= 0) {
        sc.seed = static_cast<std::uint64_t>(seed_override);
        sc.errors.seed = sc.seed;
    }
    return sc;
}

sarkit::cli::Mode parse_mode(const std::string& mode) {
    if (mode == "mono") return sarkit::cli::Mode::kMono;
    if (mode == "bistatic") return sarkit::cli::Mode::kBistatic;
    if (mode == "both") return sarkit::cli::Mode::kBoth;
    throw CLI::ValidationError("--mode must be mono, bistatic or both");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multistatic OFDM SAR simulation toolkit"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::string mode_str = "both";
    std::string stream_path;
    std::int64_t seed_override = -1;
    int threads = 0;
    int figure_id = 7;

    app.add_option("--scenario", scenario_path, "Scenario file (defaults used when omitted)");
    app.add_option("--seed", seed_override, "Override the scenario seed");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--mode", mode_str, "mono | bistatic | both");
    app.add_option("--threads", threads, "Worker threads (0 = hardware)");

    int stream_frames = 0;
    double stream_pri = 0.0;
    auto* cmd_simulate = app.add_subcommand("simulate", "Run the campaign, emit rx artifacts");
    cmd_simulate->add_option("--stream", stream_frames,
                             "Also emit tx_stream.bin with N repeated frames");
    cmd_simulate->add_option("--stream-pri", stream_pri,
                             "Frame period for the emitted stream [s] (default: scenario PRI)");
    auto* cmd_trigger = app.add_subcommand("trigger", "Detect PN preambles in a stream");
    cmd_trigger->add_option("--in", stream_path, "Stream artifact (binary signal)")->required();
    auto* cmd_process = app.add_subcommand("process", "Range-compress rx artifacts");
    auto* cmd_image = app.add_subcommand("image", "Backproject rc artifacts");
    auto* cmd_metrics = app.add_subcommand("metrics", "Coherence and quality reports");
    auto* cmd_budget = app.add_subcommand("budget", "Timing/rate/bandwidth budgets");
    auto* cmd_figure = app.add_subcommand("figure", "One-shot error-study pipelines");
    cmd_figure->add_option("id", figure_id, "7 ideal | 8 SFO | 9 CFO | 10 CPE/TO | 11 localization")
        ->required();

    // global options may appear after the subcommand
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto sc = load(scenario_path, seed_override);
        const auto mode = parse_mode(mode_str);
        const std::filesystem::path out(out_dir);

        if (cmd_budget->parsed()) {
            std::cout << sarkit::cli::format_budget(sarkit::cli::compute_budget(sc));
            return 0;
        }
        if (cmd_simulate->parsed()) {
            sarkit::cli::run_simulate(sc, out, mode, threads);
            if (stream_frames > 0) sarkit::cli::run_emit_stream(sc, out, stream_frames, stream_pri);
        } else if (cmd_process->parsed()) {
            sarkit::cli::run_process(sc, out, mode, threads);
        } else if (cmd_image->parsed()) {
            sarkit::cli::run_image(sc, out, mode, threads);
        } else if (cmd_metrics->parsed()) {
            sarkit::cli::run_metrics(sc, out);
        } else if (cmd_trigger->parsed()) {
            const auto events = sarkit::cli::run_trigger(sc, stream_path, out);
            std::cout << events.size() << " trigger event(s); see events.txt\n";
        } else if (cmd_figure->parsed()) {
            sarkit::cli::run_figure(sc, figure_id, out, threads);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
