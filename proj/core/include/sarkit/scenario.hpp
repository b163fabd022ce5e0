#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sarkit/channel.hpp"
#include "sarkit/imaging.hpp"
#include "sarkit/rangeproc.hpp"
#include "sarkit/scene.hpp"
#include "sarkit/waveform.hpp"

namespace sarkit::cli {

struct ProcessingOptions {
    rangeproc::Window window = rangeproc::Window::kHann;
    int oversample = 8;
    double r_cal_hat = -1.0;  // < 0: follow scene r_cal (perfect calibration)
    int streams = 2;          // IQ channel count in the data-rate budget
    double dr_max = 0.02;     // one-way range error budget [m]
    double v_max = 10.0;      // platform speed bound for the timing budget [m/s]
    double dt_max_chirp = -1.0;  // < 0: T/10
};

struct SweepConfig {
    std::vector<double> sfo_hz{0.0, 100e3, 2e6};
    std::vector<double> cfo_hz{0.0, 10e3, 100e3};
    std::vector<double> cpe_rad;  // default {0, pi/4, pi/2, pi}
    std::vector<double> to_s{0.5e-9, 2e-9, 10e-9};
    std::vector<double> loc_m;  // default {0, lambda/16, lambda/8, lambda/4}
};

/// Fully resolved experiment description; every field has a default matching
/// the simulation/measurement parameter tables.
struct Scenario {
    waveform::OfdmParams params;
    scene::Vec3 tx_start{0.0, -15.0, 10.0};
    scene::Vec3 tx_velocity{0.0, 1.0, 0.0};
    std::vector<scene::Vec3> rx_offsets{{0.0, 0.0, 0.0}};  // tandem offsets from tx
    std::vector<scene::PointTarget> targets;
    double r_cal = 0.0;
    channel::ErrorConfig errors;
    ProcessingOptions processing;
    imaging::PixelGrid grid;
    SweepConfig sweeps;
    int measurements = 3001;
    std::uint64_t seed = 1;
    int pn_order = 10;
    double trigger_threshold = 0.6;

    /// Truth transmit trajectory over the campaign span.
    scene::Trajectory tx_trajectory() const;
    /// Truth receiver trajectory (tx shifted by the tandem offset).
    scene::Trajectory rx_trajectory(std::size_t index) const;
    /// Scene assembled from the trajectory/target description.
    scene::Scene make_scene() const;
    double resolved_r_cal_hat() const { return processing.r_cal_hat < 0.0 ? r_cal : processing.r_cal_hat; }
    double resolved_dt_max_chirp() const {
        return processing.dt_max_chirp < 0.0 ? params.symbol_T / 10.0 : processing.dt_max_chirp;
    }

    void validate() const;
};

/// Parse + validate a scenario file. Unknown keys are rejected; omitted keys
/// fall back to the defaults above. Diagnostics carry file:line positions.
Scenario load_scenario(const std::filesystem::path& path);

/// Same parser over an in-memory string (diagnostics use `name`).
Scenario parse_scenario(const std::string& text, const std::string& name = "<memory>");

}  // namespace sarkit::cli
