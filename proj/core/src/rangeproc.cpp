#include "sarkit/rangeproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sarkit/constants.hpp"
#include "sarkit/fft.hpp"

namespace sarkit::rangeproc {

cplx RangeProfile::eval_at(double cell) const {
    // r(rho) = sum_n spectrum[n] e^{j 2 pi n rho / (N * oversample)}
    const std::size_t n_sub = spectrum.size();
    const double denom = static_cast<double>(n_sub) * static_cast<double>(oversample);
    cplx acc(0.0, 0.0);
    for (std::size_t n = 0; n < n_sub; ++n) {
        const double ph = kTwoPi * static_cast<double>(n) * cell / denom;
        acc += spectrum[n] * cplx(std::cos(ph), std::sin(ph));
    }
    return acc;
}

ComplexSignal downconvert(const ComplexSignal& y, double fc) {
    ComplexSignal out = y;
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        const double ph = kTwoPi * fc * y.time_at(i);
        out.data[i] *= cplx(std::cos(ph), -std::sin(ph));
    }
    return out;
}

SubcarrierData demodulate(const ComplexSignal& y_baseband, const waveform::OfdmParams& params) {
    params.validate();
    const long n_cp = params.cp_samples();
    const long k_win = params.dft_samples();
    if (params.body_samples() < k_win)
        throw std::invalid_argument(
            "demodulate: symbol body shorter than the 1/delta_f evaluation window");
    if (static_cast<long>(y_baseband.size()) < n_cp + k_win)
        throw std::invalid_argument("demodulate: input length mismatch (need CP + body)");

    std::vector<cplx> window(y_baseband.data.begin() + n_cp,
                             y_baseband.data.begin() + n_cp + k_win);
    auto spec = fft_forward(window);

    SubcarrierData out;
    out.kind = DataKind::kRaw;
    out.d.resize(static_cast<std::size_t>(params.n_subcarriers));
    const double scale = 1.0 / static_cast<double>(k_win);
    for (std::size_t n = 0; n < out.d.size(); ++n) out.d[n] = spec[n] * scale;
    return out;
}

SubcarrierData spectral_divide(const SubcarrierData& d_rx, const waveform::CodeSymbols& code) {
    if (d_rx.d.size() != code.d.size())
        throw std::invalid_argument("spectral_divide: length mismatch");
    SubcarrierData out;
    out.kind = d_rx.kind;
    out.d.resize(d_rx.d.size());
    // |d_n| = 1, so multiplying by the conjugate equals Hadamard division.
    for (std::size_t n = 0; n < d_rx.d.size(); ++n) out.d[n] = d_rx.d[n] * std::conj(code.d[n]);
    return out;
}

SubcarrierData calibrate_mono(const SubcarrierData& d, double r_cal_hat,
                              const waveform::OfdmParams& params) {
    if (r_cal_hat < 0.0) throw std::invalid_argument("calibrate_mono: R_cal_hat >= 0 required");
    const double dt_cal = r_cal_hat / kC0;
    SubcarrierData out;
    out.kind = DataKind::kMonoCalibrated;
    out.d.resize(d.d.size());
    for (std::size_t n = 0; n < d.d.size(); ++n) {
        const double ph = kTwoPi * (static_cast<double>(n) * params.delta_f + params.fc) * dt_cal;
        out.d[n] = d.d[n] * cplx(std::cos(ph), std::sin(ph));
    }
    return out;
}

SubcarrierData correct_bistatic(const SubcarrierData& d_rad, const SubcarrierData& d_sl) {
    if (d_rad.d.size() != d_sl.d.size())
        throw std::invalid_argument("correct_bistatic: length mismatch");
    std::vector<double> mags(d_sl.d.size());
    for (std::size_t n = 0; n < d_sl.d.size(); ++n) mags[n] = std::abs(d_sl.d[n]);
    std::vector<double> sorted = mags;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2),
                     sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double floor = 1e-9 * median;

    SubcarrierData out;
    out.kind = DataKind::kBistaticCorrected;
    out.d.resize(d_rad.d.size());
    for (std::size_t n = 0; n < d_rad.d.size(); ++n) {
        if (!(mags[n] > floor))
            throw std::runtime_error("correct_bistatic: sidelink dropout at subcarrier " +
                                     std::to_string(n));
        out.d[n] = d_rad.d[n] / d_sl.d[n];
    }
    return out;
}

RangeProfile range_compress(const SubcarrierData& d, Window window, int oversample,
                            const waveform::OfdmParams& params, RangeDomain domain) {
    if (oversample < 1) throw std::invalid_argument("range_compress: oversample >= 1 required");
    const std::size_t n_sub = d.d.size();

    RangeProfile profile;
    profile.oversample = oversample;
    profile.domain = domain;
    profile.spectrum.resize(n_sub);
    for (std::size_t n = 0; n < n_sub; ++n) {
        double w = 1.0;
        if (window == Window::kHann && n_sub > 1) {
            w = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(n) /
                                      static_cast<double>(n_sub - 1)));
        }
        profile.spectrum[n] = d.d[n] * w;
    }

    std::vector<cplx> padded(n_sub * static_cast<std::size_t>(oversample), cplx(0.0, 0.0));
    std::copy(profile.spectrum.begin(), profile.spectrum.end(), padded.begin());
    profile.r = fft_backward(padded);

    const double bandwidth = params.bandwidth();
    const double base = kC0 / (bandwidth * static_cast<double>(oversample));
    profile.cell_size = (domain == RangeDomain::kMonostaticTwoWay) ? base / 2.0 : base;
    return profile;
}

Peak peak_cell(const RangeProfile& profile) {
    if (profile.r.empty()) throw std::invalid_argument("peak_cell: empty profile");
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t i = 0; i < profile.r.size(); ++i) {
        const double mag = std::abs(profile.r[i]);
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag == 0.0) throw std::runtime_error("peak_cell: all-zero profile");

    Peak peak;
    peak.cell = best;
    peak.value = profile.r[best];

    // Parabolic refinement on the magnitude, cyclic neighbors.
    const std::size_t n = profile.r.size();
    const double ym = std::abs(profile.r[(best + n - 1) % n]);
    const double y0 = best_mag;
    const double yp = std::abs(profile.r[(best + 1) % n]);
    const double denom = ym - 2.0 * y0 + yp;
    double delta = 0.0;
    if (std::abs(denom) > 1e-300) delta = 0.5 * (ym - yp) / denom;
    delta = std::clamp(delta, -0.5, 0.5);
    peak.refined_cell = static_cast<double>(best) + delta;
    return peak;
}

RangeProfile process_mono(const ComplexSignal& rx, const waveform::OfdmParams& params,
                          const waveform::CodeSymbols& code, const ProcessingConfig& cfg) {
    const auto d_raw = demodulate(downconvert(rx, params.fc), params);
    const auto d_div = spectral_divide(d_raw, code);
    const auto d_cal = calibrate_mono(d_div, cfg.r_cal_hat, params);
    return range_compress(d_cal, cfg.window, cfg.oversample, params,
                          RangeDomain::kMonostaticTwoWay);
}

RangeProfile process_uncorrected(const ComplexSignal& rx, const waveform::OfdmParams& params,
                                 const waveform::CodeSymbols& code, const ProcessingConfig& cfg) {
    const auto d_raw = demodulate(downconvert(rx, params.fc), params);
    const auto d_div = spectral_divide(d_raw, code);
    return range_compress(d_div, cfg.window, cfg.oversample, params,
                          RangeDomain::kBistaticRelative);
}

RangeProfile process_bistatic(const ComplexSignal& rx_radar, const ComplexSignal& rx_sidelink,
                              const waveform::OfdmParams& params,
                              const waveform::CodeSymbols& code, const ProcessingConfig& cfg) {
    const auto d_rad = spectral_divide(demodulate(downconvert(rx_radar, params.fc), params), code);
    const auto d_sl =
        spectral_divide(demodulate(downconvert(rx_sidelink, params.fc), params), code);
    const auto d_bi = correct_bistatic(d_rad, d_sl);
    return range_compress(d_bi, cfg.window, cfg.oversample, params, RangeDomain::kBistaticRelative);
}

}  // namespace sarkit::rangeproc
