#include "sarkit/runner.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sarkit/constants.hpp"
#include "sarkit/io.hpp"
#include "sarkit/metrics.hpp"
#include "sarkit/parallel.hpp"
#include "sarkit/rng.hpp"

namespace sarkit::channel {

double max_tolerable_sfo(const waveform::OfdmParams& params) {
    return params.fs / (params.bandwidth() * params.symbol_T + 1.0);
}

double max_tolerable_cfo(const waveform::OfdmParams& params) { return params.delta_f / 10.0; }

}  // namespace sarkit::channel

namespace sarkit::cli {

namespace fs = std::filesystem;

namespace {

bool wants_mono(Mode mode) { return mode != Mode::kBistatic; }
bool wants_bistatic(Mode mode) { return mode != Mode::kMono; }

scene::Trajectory reported_tx(const Scenario& sc) {
    auto traj = sc.tx_trajectory();
    if (sc.errors.loc_sigma > 0.0)
        traj = channel::perturb_localization(traj, sc.errors.loc_sigma, sc.errors.loc_window,
                                             seed_substream(sc.seed, "loc-tx"));
    return traj;
}

scene::Trajectory reported_rx(const Scenario& sc, std::size_t r) {
    auto traj = sc.rx_trajectory(r);
    if (sc.errors.loc_sigma > 0.0)
        traj = channel::perturb_localization(traj, sc.errors.loc_sigma, sc.errors.loc_window,
                                             seed_substream(sc.seed, "loc-rx", r));
    return traj;
}

rangeproc::ProcessingConfig processing_config(const Scenario& sc) {
    rangeproc::ProcessingConfig cfg;
    cfg.window = sc.processing.window;
    cfg.oversample = sc.processing.oversample;
    cfg.r_cal_hat = sc.resolved_r_cal_hat();
    return cfg;
}

void write_rc_quicklook(const fs::path& path,
                        const std::vector<rangeproc::RangeProfile>& profiles) {
    std::vector<cplx> flat;
    const std::size_t cols = profiles.front().r.size();
    flat.reserve(profiles.size() * cols);
    for (const auto& p : profiles) flat.insert(flat.end(), p.r.begin(), p.r.end());
    io::write_pgm_db(path, flat, cols, profiles.size());
}

void write_image_artifacts(const fs::path& out, const std::string& name,
                           const imaging::SarImage& image) {
    io::write_image(out / ("sar_" + name + ".bin"), image);
    io::write_pgm_db(out / ("sar_" + name + ".pgm"), image.a,
                     static_cast<std::size_t>(image.grid.nu),
                     static_cast<std::size_t>(image.grid.nv));
    io::write_image_csv(out / ("sar_" + name + ".csv"), image);
    try {
        double pu, pv;
        metrics::refined_argmax(image, pu, pv);
        const scene::Vec3 peak_pos =
            image.grid.origin + image.grid.u_axis * pu + image.grid.v_axis * pv;
        io::write_cut_csv(out / ("cut_" + name + "_u.csv"),
                          imaging::image_cut(image, imaging::CutAxis::kU, peak_pos));
        io::write_cut_csv(out / ("cut_" + name + "_v.csv"),
                          imaging::image_cut(image, imaging::CutAxis::kV, peak_pos));
    } catch (const std::exception& e) {
        std::cerr << "image " << name << ": cuts skipped (" << e.what() << ")\n";
    }
}

std::vector<rangeproc::RangeProfile> load_profiles(const fs::path& path) {
    double f_prf = 0.0;
    return io::read_profile_matrix(path, f_prf);
}

double image_peak_db(const imaging::SarImage& image) {
    return 20.0 * std::log10(std::max(image.peak_magnitude(), 1e-300));
}

}  // namespace

BudgetReport compute_budget(const Scenario& sc) {
    const auto& p = sc.params;
    BudgetReport report;
    report.bandwidth = p.bandwidth();
    report.gamma = waveform::duty_cycle(p.symbol_T + p.cp_T, p.t_pri());
    report.data_rate =
        waveform::mean_data_rate(p.fs, p.adc_bits, report.gamma, sc.processing.streams);
    report.f_sfo_max = channel::max_tolerable_sfo(p);
    report.f_cfo_max = channel::max_tolerable_cfo(p);
    report.dt_max_chirp = sc.resolved_dt_max_chirp();
    report.b_eff_chirp =
        waveform::effective_bandwidth_chirp(p.symbol_T, report.dt_max_chirp, report.bandwidth);
    report.timing = waveform::timing_budget(sc.processing.dr_max, p.t_pri(), sc.processing.v_max);
    return report;
}

std::string format_budget(const BudgetReport& r) {
    std::ostringstream out;
    out.precision(10);
    out << "bandwidth_hz=" << r.bandwidth << "\n"
        << "duty_cycle=" << r.gamma << "\n"
        << "mean_data_rate_bit_s=" << r.data_rate << "\n"
        << "f_sfo_max_hz=" << r.f_sfo_max << "\n"
        << "f_cfo_max_hz=" << r.f_cfo_max << "\n"
        << "dt_sync_s=" << r.timing.dt_sync << "\n"
        << "dt_pri_s=" << r.timing.dt_pri << "\n"
        << "dt_loc_s=" << r.timing.dt_loc << "\n"
        << "b_eff_chirp_hz=" << r.b_eff_chirp << " (dt_max=" << r.dt_max_chirp << ")\n";
    return out.str();
}

void run_simulate(const Scenario& sc, const fs::path& out, Mode mode, int threads) {
    fs::create_directories(out);
    scene::Scene scn = sc.make_scene();
    if (!wants_bistatic(mode)) scn.rx.clear();
    const auto campaign = channel::simulate_campaign(scn, sc.params, sc.errors, sc.measurements,
                                                     threads);

    std::ofstream truth(out / "truth.csv", std::ios::trunc);
    truth << "node,m,t_m,entry,tof_s\n";
    truth.precision(12);

    auto dump_truth = [&](const channel::ReceiverCampaign& rc) {
        for (const auto& meas : rc.measurements) {
            for (std::size_t q = 0; q < meas.truth.target_tofs.size(); ++q)
                truth << rc.node_id << ',' << meas.m << ',' << meas.t_m << ",target" << q << ','
                      << meas.truth.target_tofs[q] << '\n';
            if (!rc.monostatic)
                truth << rc.node_id << ',' << meas.m << ',' << meas.t_m << ",sidelink,"
                      << meas.truth.sidelink_tof << '\n';
        }
    };

    if (wants_mono(mode)) {
        std::vector<ComplexSignal> rows;
        rows.reserve(campaign.receivers[0].measurements.size());
        for (const auto& meas : campaign.receivers[0].measurements) rows.push_back(meas.rx_radar);
        io::write_signal_matrix(out / "rx_mono.bin", rows, sc.params.f_prf);
        dump_truth(campaign.receivers[0]);
    }
    for (std::size_t r = 1; r < campaign.receivers.size(); ++r) {
        const auto& rc = campaign.receivers[r];
        std::vector<ComplexSignal> radar, sidelink;
        radar.reserve(rc.measurements.size());
        sidelink.reserve(rc.measurements.size());
        for (const auto& meas : rc.measurements) {
            radar.push_back(meas.rx_radar);
            sidelink.push_back(*meas.rx_sidelink);
        }
        const std::string stem = "rx_" + rc.node_id;
        io::write_signal_matrix(out / (stem + "_radar.bin"), radar, sc.params.f_prf);
        io::write_signal_matrix(out / (stem + "_sidelink.bin"), sidelink, sc.params.f_prf);
        dump_truth(rc);
    }
}

void run_emit_stream(const Scenario& sc, const fs::path& out, int frames, double pri_override) {
    fs::create_directories(out);
    const auto code = waveform::generate_code(sc.params, seed_substream(sc.seed, "code"));
    const auto pn = trigger::generate_pn(sc.pn_order, seed_substream(sc.seed, "pn"));
    const auto radar = generate_symbol(sc.params, code);
    const double t_pri = pri_override > 0.0 ? pri_override : sc.params.t_pri();
    const auto frame = waveform::assemble_frame(pn.as_signal(sc.params.fs), radar, {}, t_pri);
    const auto stream =
        waveform::upconvert(waveform::materialize_stream(frame, frames), sc.params.fc);
    io::write_signal(out / "tx_stream.bin", stream);
}

void run_process(const Scenario& sc, const fs::path& out, Mode mode, int threads) {
    const auto code = waveform::generate_code(sc.params, seed_substream(sc.seed, "code"));
    const auto cfg = processing_config(sc);

    enum class Chain { kMono, kBistaticCorrected, kBistaticRaw };
    auto process_matrix = [&](const fs::path& in, const fs::path& sl_in, Chain chain,
                              const fs::path& rc_path) {
        double f_prf = 0.0;
        const auto rows = io::read_signal_matrix(in, f_prf);
        std::vector<ComplexSignal> sl_rows;
        if (chain == Chain::kBistaticCorrected) {
            double f2 = 0.0;
            sl_rows = io::read_signal_matrix(sl_in, f2);
        }
        std::vector<rangeproc::RangeProfile> profiles(rows.size());
        parallel_for(rows.size(), threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                rangeproc::RangeProfile p;
                switch (chain) {
                    case Chain::kMono:
                        p = rangeproc::process_mono(rows[i], sc.params, code, cfg);
                        break;
                    case Chain::kBistaticCorrected:
                        p = rangeproc::process_bistatic(rows[i], sl_rows[i], sc.params, code, cfg);
                        break;
                    case Chain::kBistaticRaw:
                        p = rangeproc::process_uncorrected(rows[i], sc.params, code, cfg);
                        break;
                }
                p.m = static_cast<int>(i);
                p.t_m = f_prf > 0.0 ? static_cast<double>(i) / f_prf : 0.0;
                profiles[i] = std::move(p);
            }
        });
        io::write_profile_matrix(rc_path, profiles, f_prf);
        write_rc_quicklook(fs::path(rc_path).replace_extension(".pgm"), profiles);
    };

    if (wants_mono(mode) && fs::exists(out / "rx_mono.bin"))
        process_matrix(out / "rx_mono.bin", {}, Chain::kMono, out / "rc_mono.bin");
    if (wants_bistatic(mode)) {
        for (std::size_t r = 1;; ++r) {
            const std::string stem = "bi" + std::to_string(r);
            const fs::path radar = out / ("rx_" + stem + "_radar.bin");
            const fs::path sidelink = out / ("rx_" + stem + "_sidelink.bin");
            if (!fs::exists(radar)) break;
            process_matrix(radar, sidelink, Chain::kBistaticCorrected,
                           out / ("rc_" + stem + ".bin"));
            process_matrix(radar, {}, Chain::kBistaticRaw, out / ("rc_" + stem + "_raw.bin"));
        }
    }
}

void run_image(const Scenario& sc, const fs::path& out, Mode mode, int threads) {
    const auto tx_rep = reported_tx(sc);

    imaging::BackprojectOptions options;
    options.threads = threads;

    std::map<std::string, imaging::SarImage> produced;

    if (wants_mono(mode) && fs::exists(out / "rc_mono.bin")) {
        options.mode = imaging::BpMode::kMono;
        auto image = imaging::backproject(load_profiles(out / "rc_mono.bin"), tx_rep, tx_rep,
                                          sc.grid, sc.params, options);
        write_image_artifacts(out, "mono", image);
        produced.emplace("mono", std::move(image));
    }
    if (wants_bistatic(mode)) {
        for (std::size_t r = 1; r <= sc.rx_offsets.size(); ++r) {
            const std::string stem = "bi" + std::to_string(r);
            const auto rx_rep = reported_rx(sc, r - 1);
            if (fs::exists(out / ("rc_" + stem + ".bin"))) {
                options.mode = imaging::BpMode::kBistatic;
                auto image = imaging::backproject(load_profiles(out / ("rc_" + stem + ".bin")),
                                                  tx_rep, rx_rep, sc.grid, sc.params, options);
                write_image_artifacts(out, stem, image);
                produced.emplace(stem, std::move(image));
            }
            if (fs::exists(out / ("rc_" + stem + "_raw.bin"))) {
                options.mode = imaging::BpMode::kBistatic;
                auto image =
                    imaging::backproject(load_profiles(out / ("rc_" + stem + "_raw.bin")), tx_rep,
                                         rx_rep, sc.grid, sc.params, options);
                write_image_artifacts(out, stem + "_raw", image);
                produced.emplace(stem + "_raw", std::move(image));
            }
        }
    }
    if (mode == Mode::kBoth && produced.count("mono") && produced.count("bi1")) {
        const std::vector<imaging::SarImage> pair{produced.at("mono"), produced.at("bi1")};
        write_image_artifacts(out, "combined_coherent", imaging::combine_coherent(pair));
        write_image_artifacts(out, "combined_absolute", imaging::combine_absolute(pair));
    }
    for (const auto& [name, image] : produced)
        if (image.out_of_swath > 0)
            std::cerr << "image " << name << ": " << image.out_of_swath
                      << " pixel lookups outside the profile swath contributed zero\n";
}

void run_metrics(const Scenario& sc, const fs::path& out) {
    std::ofstream report(out / "metrics.txt", std::ios::trunc);
    report.precision(9);

    // fixed iteration order so the report is reproducible
    std::vector<fs::path> entries;
    for (const auto& item : fs::directory_iterator(out))
        if (item.is_regular_file()) entries.push_back(item.path());
    std::sort(entries.begin(), entries.end());

    for (const auto& path : entries) {
        const std::string name = path.filename().string();
        if (name.rfind("rc_", 0) == 0 && path.extension() == ".bin") {
            const auto profiles = load_profiles(path);
            const auto cr = metrics::coherence_report(profiles);
            double mean = 0.0;
            for (double ph : cr.phases) mean += ph;
            mean /= static_cast<double>(cr.phases.size());
            double var = 0.0;
            for (double ph : cr.phases) var += (ph - mean) * (ph - mean);
            var /= static_cast<double>(cr.phases.size());
            report << "rc file=" << name << " M=" << cr.m_count << " gamma_cf=" << cr.gamma_cf
                   << " peak_cell=" << metrics::average_peak_cell(profiles)
                   << " phase_std_rad=" << std::sqrt(var) << "\n";
        }
    }
    for (const auto& path : entries) {
        const std::string name = path.filename().string();
        if (name.rfind("sar_", 0) == 0 && path.extension() == ".bin") {
            const auto image = io::read_image(path);
            double pu, pv;
            metrics::refined_argmax(image, pu, pv);
            report << "sar file=" << name << " peak_db=" << image_peak_db(image)
                   << " argmax_u_m=" << pu << " argmax_v_m=" << pv
                   << " out_of_swath=" << image.out_of_swath << "\n";
            for (std::size_t q = 0; q < sc.targets.size(); ++q) {
                try {
                    const auto local = imaging::crop_around(image, sc.targets[q].pos, 1.5, 1.5);
                    report << "sar_target file=" << name << " target=" << q
                           << " position_error_m="
                           << metrics::peak_position_error(local, sc.targets[q].pos) << "\n";
                } catch (const std::exception&) {
                    // target outside the imaged area; skip silently
                }
            }
            const scene::Vec3 peak_pos =
                image.grid.origin + image.grid.u_axis * pu + image.grid.v_axis * pv;
            for (auto axis : {imaging::CutAxis::kU, imaging::CutAxis::kV}) {
                try {
                    const auto cut = imaging::image_cut(image, axis, peak_pos);
                    report << "resolution file=" << name << " axis="
                           << (axis == imaging::CutAxis::kU ? 'u' : 'v')
                           << " width_3db_m=" << metrics::resolution_3db(cut) << "\n";
                } catch (const std::exception& e) {
                    report << "resolution file=" << name << " axis="
                           << (axis == imaging::CutAxis::kU ? 'u' : 'v') << " width_3db_m=nan # "
                           << e.what() << "\n";
                }
            }
        }
    }
}

std::vector<trigger::TriggerEvent> run_trigger(const Scenario& sc, const fs::path& stream_path,
                                               const fs::path& out) {
    fs::create_directories(out);
    const auto stream = io::read_signal(stream_path);
    // Detection runs on the downconverted stream; the chips are baseband.
    const auto baseband = rangeproc::downconvert(stream, sc.params.fc);
    const auto pn = trigger::generate_pn(sc.pn_order, seed_substream(sc.seed, "pn"));
    const auto events = trigger::correlate_detect(baseband, pn, sc.trigger_threshold);
    std::ofstream log(out / "events.txt", std::ios::trunc);
    log.precision(6);
    for (const auto& ev : events) log << "event index=" << ev.index << " score=" << ev.score << "\n";
    return events;
}

void run_figure(const Scenario& sc, int figure_id, const fs::path& out, int threads) {
    fs::create_directories(out);
    std::ofstream summary(out / "summary.txt", std::ios::trunc);
    summary.precision(6);

    auto ideal_errors = [&]() {
        channel::ErrorConfig e;
        e.seed = sc.seed;
        e.loc_window = sc.errors.loc_window;
        return e;
    };

    auto run_case = [&](const std::string& label, const Scenario& variant, Mode mode) {
        const fs::path dir = out / label;
        fs::create_directories(dir);
        run_simulate(variant, dir, mode, threads);
        run_process(variant, dir, mode, threads);
        run_image(variant, dir, mode, threads);
        run_metrics(variant, dir);
        return dir;
    };

    auto peak_of = [&](const fs::path& dir, const std::string& image) {
        return image_peak_db(io::read_image(dir / ("sar_" + image + ".bin")));
    };

    switch (figure_id) {
        case 7: {  // ideal five-target study: range histories + focused image
            Scenario v = sc;
            v.errors = ideal_errors();
            const auto dir = run_case("ideal", v, Mode::kBoth);
            summary << "figure=7 case=ideal sar_mono_peak_db=" << peak_of(dir, "mono")
                    << " sar_bi1_peak_db=" << peak_of(dir, "bi1") << "\n";
            break;
        }
        case 8: {  // sampling frequency offset sweep, uncorrected processing
            double reference = 0.0;
            for (double f_sfo : sc.sweeps.sfo_hz) {
                Scenario v = sc;
                v.errors = ideal_errors();
                v.errors.delta_s = 1.0 - f_sfo / sc.params.fs;
                const std::string label = "sfo_" + std::to_string(static_cast<long>(f_sfo)) + "hz";
                const auto dir = run_case(label, v, Mode::kBistatic);
                const double peak = peak_of(dir, "bi1_raw");
                if (f_sfo == 0.0) reference = peak;
                summary << "figure=8 case=" << label << " f_sfo_hz=" << f_sfo
                        << " peak_db=" << peak << " loss_db=" << reference - peak << "\n";
            }
            break;
        }
        case 9: {  // carrier frequency offset sweep, uncorrected processing
            double reference = 0.0;
            for (double f_cfo : sc.sweeps.cfo_hz) {
                Scenario v = sc;
                v.errors = ideal_errors();
                v.errors.delta_c = 1.0 - f_cfo / sc.params.fc;
                const std::string label = "cfo_" + std::to_string(static_cast<long>(f_cfo)) + "hz";
                const auto dir = run_case(label, v, Mode::kBistatic);
                const double peak = peak_of(dir, "bi1_raw");
                if (f_cfo == 0.0) reference = peak;
                summary << "figure=9 case=" << label << " f_cfo_hz=" << f_cfo
                        << " peak_db=" << peak << " loss_db=" << reference - peak << "\n";
            }
            break;
        }
        case 10: {  // slow-time CPE and TO, uncorrected vs sidelink-corrected
            for (double cpe : sc.sweeps.cpe_rad) {
                Scenario v = sc;
                v.errors = ideal_errors();
                v.errors.cpe_max = cpe;
                std::ostringstream label;
                label << "cpe_" << cpe << "rad";
                const auto dir = run_case(label.str(), v, Mode::kBistatic);
                const auto raw = metrics::coherence_report(load_profiles(dir / "rc_bi1_raw.bin"));
                const auto cor = metrics::coherence_report(load_profiles(dir / "rc_bi1.bin"));
                summary << "figure=10 case=" << label.str() << " cpe_max_rad=" << cpe
                        << " gamma_uncorrected=" << raw.gamma_cf
                        << " gamma_corrected=" << cor.gamma_cf
                        << " peak_uncorrected_db=" << peak_of(dir, "bi1_raw")
                        << " peak_corrected_db=" << peak_of(dir, "bi1") << "\n";
            }
            for (double to : sc.sweeps.to_s) {
                Scenario v = sc;
                v.errors = ideal_errors();
                v.errors.to_max = to;
                std::ostringstream label;
                label << "to_" << to * 1e9 << "ns";
                const auto dir = run_case(label.str(), v, Mode::kBistatic);
                const auto raw = metrics::coherence_report(load_profiles(dir / "rc_bi1_raw.bin"));
                const auto cor = metrics::coherence_report(load_profiles(dir / "rc_bi1.bin"));
                summary << "figure=10 case=" << label.str() << " to_max_s=" << to
                        << " gamma_uncorrected=" << raw.gamma_cf
                        << " gamma_corrected=" << cor.gamma_cf
                        << " peak_uncorrected_db=" << peak_of(dir, "bi1_raw")
                        << " peak_corrected_db=" << peak_of(dir, "bi1") << "\n";
            }
            break;
        }
        case 11: {  // localization error sweep; signals untouched, phase model off
            double reference = 0.0;
            bool first = true;
            for (double sigma : sc.sweeps.loc_m) {
                Scenario v = sc;
                v.errors = ideal_errors();
                v.errors.loc_sigma = sigma;
                std::ostringstream label;
                label << "loc_" << sigma << "m";
                const auto dir = run_case(label.str(), v, Mode::kBoth);
                const double peak = peak_of(dir, "mono");
                if (first) {
                    reference = peak;
                    first = false;
                }
                summary << "figure=11 case=" << label.str() << " loc_sigma_m=" << sigma
                        << " peak_db=" << peak << " loss_db=" << reference - peak << "\n";
            }
            break;
        }
        default:
            throw std::invalid_argument("figure: id must be one of 7, 8, 9, 10, 11");
    }
}

}  // namespace sarkit::cli
