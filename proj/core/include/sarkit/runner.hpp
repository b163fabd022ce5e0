#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sarkit/scenario.hpp"
#include "sarkit/trigger.hpp"

namespace sarkit::cli {

enum class Mode { kMono, kBistatic, kBoth };

struct BudgetReport {
    double bandwidth = 0.0;
    double gamma = 0.0;
    double data_rate = 0.0;
    double f_sfo_max = 0.0;
    double f_cfo_max = 0.0;
    double b_eff_chirp = 0.0;
    double dt_max_chirp = 0.0;
    waveform::TimingBudget timing{};
};

/// Rate/timing/bandwidth budgets for the scenario parameters.
BudgetReport compute_budget(const Scenario& sc);
std::string format_budget(const BudgetReport& report);

/// Campaign simulation; writes rx_mono.bin, rx_bi<r>_{radar,sidelink}.bin and
/// truth.csv into `out`.
void run_simulate(const Scenario& sc, const std::filesystem::path& out, Mode mode, int threads);

/// Transmit-side frame stream (PN preamble + radar segment at RF), repeated
/// `frames` times, into tx_stream.bin; feeds the `trigger` subcommand.
/// pri_override > 0 shortens the frame period so demo files stay small.
void run_emit_stream(const Scenario& sc, const std::filesystem::path& out, int frames,
                     double pri_override);

/// Range compression from the rx artifacts; writes rc_mono.bin, rc_bi<r>.bin
/// (sidelink-corrected), rc_bi<r>_raw.bin (spectral division only) and PGM
/// quicklooks.
void run_process(const Scenario& sc, const std::filesystem::path& out, Mode mode, int threads);

/// Backprojection from the rc artifacts; writes sar_*.{bin,pgm,csv} plus
/// peak cuts, and the coherent/absolute combinations when mode is kBoth.
void run_image(const Scenario& sc, const std::filesystem::path& out, Mode mode, int threads);

/// Coherence/resolution/peak reports from the rc and sar artifacts into
/// metrics.txt.
void run_metrics(const Scenario& sc, const std::filesystem::path& out);

/// PN detection over a recorded stream artifact; events to events.txt.
std::vector<trigger::TriggerEvent> run_trigger(const Scenario& sc,
                                               const std::filesystem::path& stream_path,
                                               const std::filesystem::path& out);

/// One-shot error-study pipelines (7 ideal, 8 SFO, 9 CFO, 10 CPE/TO,
/// 11 localization); each case runs simulate -> process -> image -> metrics
/// through the same file formats and a summary.txt is written per figure.
void run_figure(const Scenario& sc, int figure_id, const std::filesystem::path& out, int threads);

}  // namespace sarkit::cli

namespace sarkit::channel {

/// Largest SFO magnitude that keeps range compression intact: fs/(B*T + 1).
double max_tolerable_sfo(const waveform::OfdmParams& params);

/// Largest CFO magnitude without significant intercarrier interference:
/// delta_f / 10.
double max_tolerable_cfo(const waveform::OfdmParams& params);

}  // namespace sarkit::channel
