#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sarkit/complex_signal.hpp"
#include "sarkit/scene.hpp"
#include "sarkit/waveform.hpp"

namespace sarkit::channel {

/// Incoherency error model of an independently clocked receive node.
struct ErrorConfig {
    double delta_s = 1.0;      // relative sampling-rate factor (SFO = (1-delta_s)*fs)
    double delta_c = 1.0;      // relative carrier factor (CFO = (1-delta_c)*fc)
    double cpe_max = 0.0;      // per-measurement carrier phase error bound [rad]
    double to_max = 0.0;       // per-measurement timing offset bound [s]
    double loc_sigma = 0.0;    // localization error std per axis [m]
    int loc_window = 31;       // moving-average window [samples], odd
    double noise_sigma = 0.0;  // complex AWGN std per sample; 0 disables
    std::uint64_t seed = 1;

    void validate() const;
    double f_cfo(double fc) const { return (1.0 - delta_c) * fc; }
    double f_sfo(double fs) const { return (1.0 - delta_s) * fs; }
};

struct SlowTimeErrors {
    double phi_cpe = 0.0;  // [rad]
    double t_to = 0.0;     // [s]
};

struct TruthRecord {
    std::vector<double> target_tofs;  // delay actually injected per target [s]
    double sidelink_tof = 0.0;
};

struct Measurement {
    int m = 0;
    double t_m = 0.0;
    ComplexSignal rx_radar;
    std::optional<ComplexSignal> rx_sidelink;  // absent for the monostatic node
    TruthRecord truth;
};

struct ReceiverCampaign {
    std::string node_id;
    bool monostatic = false;
    std::vector<Measurement> measurements;
    std::vector<SlowTimeErrors> draws;  // applied slow-time errors per m
};

struct Campaign {
    waveform::CodeSymbols code;
    std::vector<ReceiverCampaign> receivers;  // [0] monostatic, then one per scene.rx
};

/// y(t) = amplitude * x(t - tof), realized as the per-subcarrier phase ramp
/// exp(-j 2 pi (n delta_f + fc) tof) on the symbol's subcarrier coefficients.
/// Exact for in-model signals; `x` must be an RF radar segment for `params`.
ComplexSignal propagate(const ComplexSignal& x, const waveform::OfdmParams& params, double tof,
                        cplx amplitude);

/// Two-leg inverse-distance amplitude, unit reference at 1 m x 1 m legs.
cplx free_space_amplitude(double tof_tx_leg, double tof_rx_leg, cplx reflectivity);

/// Output sample k equals y evaluated at t = k/(delta_s * fs), band-limited
/// under a cyclic signal model with positive-frequency content.
ComplexSignal resample_sfo(const ComplexSignal& y, double delta_s);

/// Sample-wise multiply by exp(j 2 pi f_cfo k / fs).
ComplexSignal apply_cfo(const ComplexSignal& y, double f_cfo);

/// Per-measurement uniform draws in +-cpe_max and +-to_max; reproducible and
/// independent of M (per-index substreams).
std::vector<SlowTimeErrors> draw_slow_time_errors(const ErrorConfig& cfg, int count);

/// Shift the receiver sampling window by t_to (negative-delay semantics of
/// propagate); requires |t_to| within the cyclic-prefix guard.
ComplexSignal apply_timing_offset(const ComplexSignal& y, const waveform::OfdmParams& params,
                                  double t_to);

/// Gaussian per-axis position error, smoothed by a centered moving average
/// (edge-truncated), added to the trajectory.
scene::Trajectory perturb_localization(const scene::Trajectory& traj, double loc_sigma,
                                       int loc_window, std::uint64_t seed);

/// Simulate M measurements of the full scene: monostatic returns on the
/// transmit node plus radar + sidelink channels on every bistatic receiver,
/// with SFO/CFO/CPE/TO applied per receiver (identically on its two channels).
Campaign simulate_campaign(const scene::Scene& scn, const waveform::OfdmParams& params,
                           const ErrorConfig& cfg, int count, int threads = 0);

}  // namespace sarkit::channel
