#include "sarkit/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "sarkit/constants.hpp"
#include "sarkit/fft.hpp"
#include "sarkit/parallel.hpp"
#include "sarkit/rangeproc.hpp"
#include "sarkit/rng.hpp"

namespace sarkit::channel {

namespace {

/// Rebuild an RF radar segment (tail-copy CP at baseband, carrier on the
/// segment's own time axis) from arbitrary subcarrier coefficients.
ComplexSignal synthesize_segment(const waveform::OfdmParams& params,
                                 const std::vector<cplx>& coeffs) {
    const long k_period = params.dft_samples();
    const long n_body = params.body_samples();
    const long n_cp = params.cp_samples();

    std::vector<cplx> spectrum(static_cast<std::size_t>(k_period), cplx(0.0, 0.0));
    for (std::size_t n = 0; n < coeffs.size(); ++n) spectrum[n] = coeffs[n];
    const std::vector<cplx> period = fft_backward(spectrum);

    ComplexSignal out;
    out.fs = params.fs;
    out.t0 = -params.cp_T;
    out.data.resize(static_cast<std::size_t>(n_cp + n_body));
    for (long k = 0; k < n_body; ++k)
        out.data[static_cast<std::size_t>(n_cp + k)] =
            period[static_cast<std::size_t>(k % k_period)];
    for (long j = 0; j < n_cp; ++j)
        out.data[static_cast<std::size_t>(j)] = out.data[static_cast<std::size_t>(n_body + j)];
    return waveform::upconvert(out, params.fc);
}

/// Subcarrier coefficients of an RF segment (inverse of synthesize_segment
/// for in-model signals).
std::vector<cplx> segment_coefficients(const ComplexSignal& x,
                                       const waveform::OfdmParams& params) {
    return rangeproc::demodulate(rangeproc::downconvert(x, params.fc), params).d;
}

/// Received segment on the receiver's sampling grid. The baseband tone sum is
/// evaluated at u_i = (i - n_cp)/(delta_s fs) + t_to, the carrier and the CFO
/// residual ride the nominal grid (SFO does not drag the carrier; the two
/// error classes are injected independently).
ComplexSignal synthesize_received(const waveform::OfdmParams& params,
                                  const std::vector<cplx>& coeffs, double delta_s, double f_cfo,
                                  double phi_cpe, double t_to) {
    const long n_cp = params.cp_samples();
    const long total = params.segment_samples();
    const double k_period = params.fs / params.delta_f;

    std::vector<cplx> folded(coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        const double ph = kTwoPi * static_cast<double>(n) * params.delta_f *
                          (t_to - static_cast<double>(n_cp) / (delta_s * params.fs));
        folded[n] = coeffs[n] * cplx(std::cos(ph), std::sin(ph));
    }

    std::vector<cplx> base;
    if (delta_s == 1.0) {
        std::vector<cplx> spectrum(static_cast<std::size_t>(std::lround(k_period)),
                                   cplx(0.0, 0.0));
        for (std::size_t n = 0; n < folded.size(); ++n) spectrum[n] = folded[n];
        const auto period = fft_backward(spectrum);
        base.resize(static_cast<std::size_t>(total));
        for (long i = 0; i < total; ++i)
            base[static_cast<std::size_t>(i)] =
                period[static_cast<std::size_t>(i % static_cast<long>(period.size()))];
    } else {
        const double theta = kTwoPi * params.delta_f / (delta_s * params.fs);
        base = czt_unit_circle(folded, theta, static_cast<std::size_t>(total));
    }

    ComplexSignal out;
    out.fs = params.fs;
    out.t0 = -params.cp_T;
    out.data.resize(static_cast<std::size_t>(total));
    const cplx cpe_factor(std::cos(phi_cpe), std::sin(phi_cpe));
    for (long i = 0; i < total; ++i) {
        const double t_nominal = static_cast<double>(i - n_cp) / params.fs + t_to;
        const double ph_c = kTwoPi * params.fc * t_nominal;
        const double ph_cfo = kTwoPi * f_cfo * static_cast<double>(i) / params.fs;
        out.data[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(i)] *
                                                cplx(std::cos(ph_c), std::sin(ph_c)) *
                                                cplx(std::cos(ph_cfo), std::sin(ph_cfo)) *
                                                cpe_factor;
    }
    return out;
}

void add_noise(ComplexSignal& sig, double sigma, std::uint64_t seed) {
    if (sigma <= 0.0) return;
    Rng rng(seed);
    const double s = sigma / std::sqrt(2.0);
    for (auto& v : sig.data) v += cplx(s * rng.gauss(), s * rng.gauss());
}

}  // namespace

void ErrorConfig::validate() const {
    if (delta_s <= 0.0) throw std::invalid_argument("errors: delta_s > 0 required");
    if (delta_c <= 0.0) throw std::invalid_argument("errors: delta_c > 0 required");
    if (cpe_max < 0.0) throw std::invalid_argument("errors: cpe_max >= 0 required");
    if (to_max < 0.0) throw std::invalid_argument("errors: to_max >= 0 required");
    if (loc_sigma < 0.0) throw std::invalid_argument("errors: loc_sigma >= 0 required");
    if (loc_window < 1 || loc_window % 2 == 0)
        throw std::invalid_argument("errors: loc_window must be odd and >= 1");
    if (noise_sigma < 0.0) throw std::invalid_argument("errors: noise_sigma >= 0 required");
}

ComplexSignal propagate(const ComplexSignal& x, const waveform::OfdmParams& params, double tof,
                        cplx amplitude) {
    if (tof < 0.0) throw std::invalid_argument("propagate: tof >= 0 required");
    auto coeffs = segment_coefficients(x, params);
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        const double ph = -kTwoPi * (static_cast<double>(n) * params.delta_f + params.fc) * tof;
        coeffs[n] *= amplitude * cplx(std::cos(ph), std::sin(ph));
    }
    return synthesize_segment(params, coeffs);
}

cplx free_space_amplitude(double tof_tx_leg, double tof_rx_leg, cplx reflectivity) {
    if (tof_tx_leg <= 0.0 || tof_rx_leg <= 0.0)
        throw std::domain_error("free_space_amplitude: leg delays must be positive");
    return reflectivity / ((kC0 * tof_tx_leg) * (kC0 * tof_rx_leg));
}

ComplexSignal resample_sfo(const ComplexSignal& y, double delta_s) {
    if (delta_s <= 0.0) throw std::invalid_argument("resample_sfo: delta_s > 0 required");
    if (y.empty()) return y;
    const std::size_t len = y.size();
    auto spec = fft_forward(y.data);
    const double scale = 1.0 / static_cast<double>(len);
    for (auto& v : spec) v *= scale;
    const double theta = kTwoPi / (delta_s * static_cast<double>(len));
    ComplexSignal out = y;
    out.data = czt_unit_circle(spec, theta, len);
    return out;
}

ComplexSignal apply_cfo(const ComplexSignal& y, double f_cfo) {
    ComplexSignal out = y;
    for (std::size_t k = 0; k < out.data.size(); ++k) {
        const double ph = kTwoPi * f_cfo * static_cast<double>(k) / y.fs;
        out.data[k] *= cplx(std::cos(ph), std::sin(ph));
    }
    return out;
}

std::vector<SlowTimeErrors> draw_slow_time_errors(const ErrorConfig& cfg, int count) {
    cfg.validate();
    if (count < 1) throw std::invalid_argument("draw_slow_time_errors: count >= 1 required");
    std::vector<SlowTimeErrors> draws(static_cast<std::size_t>(count));
    for (int m = 0; m < count; ++m) {
        auto& d = draws[static_cast<std::size_t>(m)];
        if (cfg.cpe_max > 0.0) {
            Rng rng(seed_substream(cfg.seed, "cpe", static_cast<std::uint64_t>(m)));
            d.phi_cpe = rng.uniform(-cfg.cpe_max, cfg.cpe_max);
        }
        if (cfg.to_max > 0.0) {
            Rng rng(seed_substream(cfg.seed, "to", static_cast<std::uint64_t>(m)));
            d.t_to = rng.uniform(-cfg.to_max, cfg.to_max);
        }
    }
    return draws;
}

ComplexSignal apply_timing_offset(const ComplexSignal& y, const waveform::OfdmParams& params,
                                  double t_to) {
    if (std::abs(t_to) > params.cp_T)
        throw std::runtime_error("apply_timing_offset: |T_to| exceeds the CP guard");
    auto coeffs = segment_coefficients(y, params);
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        const double ph = kTwoPi * (static_cast<double>(n) * params.delta_f + params.fc) * t_to;
        coeffs[n] *= cplx(std::cos(ph), std::sin(ph));
    }
    return synthesize_segment(params, coeffs);
}

scene::Trajectory perturb_localization(const scene::Trajectory& traj, double loc_sigma,
                                       int loc_window, std::uint64_t seed) {
    if (loc_window < 1 || loc_window % 2 == 0)
        throw std::invalid_argument("perturb_localization: window must be odd and >= 1");
    if (loc_sigma == 0.0) return traj;

    const std::size_t n = traj.samples.size();
    std::vector<std::array<double, 3>> raw(n);
    const char* axes[3] = {"loc-x", "loc-y", "loc-z"};
    for (int a = 0; a < 3; ++a) {
        Rng rng(seed_substream(seed, axes[a]));
        for (std::size_t i = 0; i < n; ++i) raw[i][static_cast<std::size_t>(a)] =
            loc_sigma * rng.gauss();
    }

    scene::Trajectory out = traj;
    const long half = (loc_window - 1) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        const long lo = std::max<long>(0, static_cast<long>(i) - half);
        const long hi = std::min<long>(static_cast<long>(n) - 1, static_cast<long>(i) + half);
        double acc[3] = {0.0, 0.0, 0.0};
        for (long j = lo; j <= hi; ++j)
            for (int a = 0; a < 3; ++a) acc[a] += raw[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)];
        const double inv = 1.0 / static_cast<double>(hi - lo + 1);
        out.samples[i].pos.x += acc[0] * inv;
        out.samples[i].pos.y += acc[1] * inv;
        out.samples[i].pos.z += acc[2] * inv;
    }
    return out;
}

Campaign simulate_campaign(const scene::Scene& scn, const waveform::OfdmParams& params,
                           const ErrorConfig& cfg, int count, int threads) {
    params.validate();
    cfg.validate();
    if (count < 1) throw std::invalid_argument("simulate_campaign: M >= 1 required");
    scn.tx.validate();
    for (const auto& r : scn.rx) r.validate();

    const double t_last = static_cast<double>(count - 1) / params.f_prf;
    if (scn.tx.t_end() + 1e-9 < t_last)
        throw std::invalid_argument("simulate_campaign: tx trajectory does not cover M/f_prf");
    for (const auto& r : scn.rx)
        if (r.t_end() + 1e-9 < t_last)
            throw std::invalid_argument("simulate_campaign: rx trajectory '" + r.node_id +
                                        "' does not cover M/f_prf");

    Campaign campaign;
    campaign.code = waveform::generate_code(params, seed_substream(cfg.seed, "code"));
    const std::vector<cplx>& code = campaign.code.d;
    const std::size_t n_sub = code.size();

    // Monostatic node first, then one entry per bistatic receiver.
    campaign.receivers.resize(1 + scn.rx.size());
    campaign.receivers[0].node_id = "mono";
    campaign.receivers[0].monostatic = true;
    campaign.receivers[0].measurements.resize(static_cast<std::size_t>(count));
    campaign.receivers[0].draws.resize(static_cast<std::size_t>(count));
    for (std::size_t r = 0; r < scn.rx.size(); ++r) {
        auto& rc = campaign.receivers[r + 1];
        rc.node_id = scn.rx[r].node_id.empty() ? ("bi" + std::to_string(r + 1)) : scn.rx[r].node_id;
        rc.monostatic = false;
        rc.measurements.resize(static_cast<std::size_t>(count));
        ErrorConfig rx_cfg = cfg;
        rx_cfg.seed = seed_substream(cfg.seed, "rx", r);
        rc.draws = draw_slow_time_errors(rx_cfg, count);
    }

    auto radar_coeffs = [&](const scene::Vec3& tx_pos, const scene::Vec3& rx_pos,
                            bool monostatic, TruthRecord& truth) {
        std::vector<cplx> coeffs(n_sub, cplx(0.0, 0.0));
        truth.target_tofs.clear();
        for (const auto& target : scn.targets) {
            const double leg_tx = (target.pos - tx_pos).norm() / kC0;
            const double leg_rx = (rx_pos - target.pos).norm() / kC0;
            double tof = leg_tx + leg_rx;
            if (monostatic) tof += scn.r_cal / kC0;  // internal delay, mono path only
            truth.target_tofs.push_back(tof);
            const cplx amp = free_space_amplitude(leg_tx, leg_rx, target.reflectivity);
            for (std::size_t n = 0; n < n_sub; ++n) {
                const double ph =
                    -kTwoPi * (static_cast<double>(n) * params.delta_f + params.fc) * tof;
                coeffs[n] += amp * code[n] * cplx(std::cos(ph), std::sin(ph));
            }
        }
        return coeffs;
    };

    parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t mi = lo; mi < hi; ++mi) {
            const int m = static_cast<int>(mi);
            const double t_m = static_cast<double>(m) / params.f_prf;
            const scene::Vec3 tx_pos = scene::position_at(scn.tx, t_m);

            {  // monostatic node shares the transmit clock: no incoherency errors
                auto& meas = campaign.receivers[0].measurements[mi];
                meas.m = m;
                meas.t_m = t_m;
                auto coeffs = radar_coeffs(tx_pos, tx_pos, true, meas.truth);
                meas.truth.sidelink_tof = 0.0;
                meas.rx_radar = synthesize_received(params, coeffs, 1.0, 0.0, 0.0, 0.0);
                add_noise(meas.rx_radar, cfg.noise_sigma,
                          seed_substream(cfg.seed, "noise-mono", mi));
            }

            for (std::size_t r = 0; r < scn.rx.size(); ++r) {
                auto& rc = campaign.receivers[r + 1];
                auto& meas = rc.measurements[mi];
                meas.m = m;
                meas.t_m = t_m;
                const scene::Vec3 rx_pos = scene::position_at(scn.rx[r], t_m);
                const SlowTimeErrors& err = rc.draws[mi];
                const double f_cfo = cfg.f_cfo(params.fc);

                auto coeffs = radar_coeffs(tx_pos, rx_pos, false, meas.truth);
                meas.rx_radar = synthesize_received(params, coeffs, cfg.delta_s, f_cfo,
                                                    err.phi_cpe, err.t_to);
                add_noise(meas.rx_radar, cfg.noise_sigma,
                          seed_substream(cfg.seed, "noise-rad", r * 1000003ULL + mi));

                // Direct path; the sidelink amplitude model saturates at 1 m
                // so co-located error studies stay finite.
                const double r_sl = (rx_pos - tx_pos).norm();
                meas.truth.sidelink_tof = r_sl / kC0;
                const cplx a_sl(1.0 / std::max(r_sl, 1.0), 0.0);
                std::vector<cplx> sl_coeffs(n_sub);
                for (std::size_t n = 0; n < n_sub; ++n) {
                    const double ph = -kTwoPi *
                                      (static_cast<double>(n) * params.delta_f + params.fc) *
                                      meas.truth.sidelink_tof;
                    sl_coeffs[n] = a_sl * code[n] * cplx(std::cos(ph), std::sin(ph));
                }
                meas.rx_sidelink = synthesize_received(params, sl_coeffs, cfg.delta_s, f_cfo,
                                                       err.phi_cpe, err.t_to);
                add_noise(*meas.rx_sidelink, cfg.noise_sigma,
                          seed_substream(cfg.seed, "noise-sl", r * 1000003ULL + mi));
            }
        }
    });
    return campaign;
}

}  // namespace sarkit::channel
