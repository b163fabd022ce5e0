#include "sarkit/waveform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sarkit/constants.hpp"
#include "sarkit/fft.hpp"
#include "sarkit/rng.hpp"

namespace sarkit::waveform {

long OfdmParams::body_samples() const { return std::lround(symbol_T * fs); }

long OfdmParams::cp_samples() const { return std::lround(cp_T * fs); }

long OfdmParams::dft_samples() const { return std::lround(fs / delta_f); }

void OfdmParams::validate() const {
    if (n_subcarriers < 1) throw std::invalid_argument("ofdm: N >= 1 required");
    if (delta_f <= 0.0) throw std::invalid_argument("ofdm: delta_f > 0 required");
    if (fs <= 0.0) throw std::invalid_argument("ofdm: fs > 0 required");
    if (bandwidth() > fs * (1.0 + 1e-12))
        throw std::invalid_argument("ofdm: B = N*delta_f <= fs required (got B = " +
                                    std::to_string(bandwidth()) + " Hz)");
    if (cp_T < 0.0) throw std::invalid_argument("ofdm: T_cp >= 0 required");
    if (symbol_T <= 0.0) throw std::invalid_argument("ofdm: T > 0 required");
    if (f_prf <= 0.0) throw std::invalid_argument("ofdm: f_prf > 0 required");
    if (f_prf * (symbol_T + cp_T) > 1.0 + 1e-12)
        throw std::invalid_argument("ofdm: f_prf*(T + T_cp) <= 1 required");
    if (adc_bits < 1) throw std::invalid_argument("ofdm: converter resolution >= 1 bit");
    // The demodulation grid needs an integer number of samples per 1/delta_f.
    const double k = fs / delta_f;
    if (std::abs(k - std::round(k)) > 1e-6)
        throw std::invalid_argument("ofdm: fs/delta_f must be an integer sample count");
}

CodeSymbols generate_code(const OfdmParams& params, std::uint64_t seed) {
    params.validate();
    CodeSymbols code;
    code.seed = seed;
    code.d.resize(static_cast<std::size_t>(params.n_subcarriers));
    Rng rng(seed_substream(seed, "qpsk-code"));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (auto& sym : code.d) {
        const std::uint64_t bits = rng.next_u64();
        const double re = (bits & 1) ? inv_sqrt2 : -inv_sqrt2;
        const double im = (bits & 2) ? inv_sqrt2 : -inv_sqrt2;
        sym = cplx(re, im);
    }
    return code;
}

ComplexSignal generate_symbol(const OfdmParams& params, const CodeSymbols& code) {
    params.validate();
    if (code.d.size() != static_cast<std::size_t>(params.n_subcarriers))
        throw std::invalid_argument("generate_symbol: code length != N");

    const long k_period = params.dft_samples();  // samples per 1/delta_f
    const long n_body = params.body_samples();
    const long n_cp = params.cp_samples();

    // body[k] = sum_n d_n e^{j2pi n delta_f k/fs} = sum_n d_n e^{j2pi nk/K}:
    // one K-point inverse DFT gives a full period, the body tiles it.
    std::vector<cplx> spectrum(static_cast<std::size_t>(k_period), cplx(0.0, 0.0));
    for (std::size_t n = 0; n < code.d.size(); ++n) spectrum[n] = code.d[n];
    const std::vector<cplx> period = fft_backward(spectrum);

    ComplexSignal out;
    out.fs = params.fs;
    out.t0 = -params.cp_T;
    out.data.resize(static_cast<std::size_t>(n_cp + n_body));
    for (long k = 0; k < n_body; ++k)
        out.data[static_cast<std::size_t>(n_cp + k)] = period[static_cast<std::size_t>(k % k_period)];
    // Cyclic prefix: copy of the symbol tail.
    for (long j = 0; j < n_cp; ++j)
        out.data[static_cast<std::size_t>(j)] = out.data[static_cast<std::size_t>(n_body + j)];
    return out;
}

ComplexSignal upconvert(const ComplexSignal& x, double fc) {
    ComplexSignal out = x;
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        const double ph = kTwoPi * fc * x.time_at(i);
        out.data[i] *= cplx(std::cos(ph), std::sin(ph));
    }
    return out;
}

double SignalFrame::active_duration() const {
    return (trigger.duration() + radar.duration() + payload.duration());
}

SignalFrame assemble_frame(ComplexSignal trigger, ComplexSignal radar, ComplexSignal payload,
                           double t_pri) {
    if (t_pri <= 0.0) throw std::invalid_argument("assemble_frame: T_pri > 0 required");
    const double fs = radar.fs;
    if (!trigger.empty() && trigger.fs != fs)
        throw std::invalid_argument("assemble_frame: trigger sample rate mismatch");
    if (!payload.empty() && payload.fs != fs)
        throw std::invalid_argument("assemble_frame: payload sample rate mismatch");

    SignalFrame frame;
    frame.t_pri = t_pri;
    frame.period_samples = std::lround(t_pri * fs);
    frame.trigger_start = 0;
    frame.radar_start = static_cast<long>(trigger.size());
    frame.payload_start = frame.radar_start + static_cast<long>(radar.size());
    const long total_active = frame.payload_start + static_cast<long>(payload.size());
    if (total_active > frame.period_samples)
        throw std::overflow_error("assemble_frame: segments exceed T_pri");
    frame.trigger = std::move(trigger);
    frame.radar = std::move(radar);
    frame.payload = std::move(payload);
    return frame;
}

ComplexSignal materialize_frame(const SignalFrame& frame) {
    ComplexSignal out;
    out.fs = frame.radar.fs;
    out.t0 = 0.0;
    out.data.assign(static_cast<std::size_t>(frame.period_samples), cplx(0.0, 0.0));
    auto put = [&](const ComplexSignal& seg, long at) {
        for (std::size_t i = 0; i < seg.size(); ++i)
            out.data[static_cast<std::size_t>(at) + i] = seg.data[i];
    };
    put(frame.trigger, frame.trigger_start);
    put(frame.radar, frame.radar_start);
    put(frame.payload, frame.payload_start);
    return out;
}

ComplexSignal materialize_stream(const SignalFrame& frame, int repetitions) {
    if (repetitions < 1) throw std::invalid_argument("materialize_stream: repetitions >= 1");
    const ComplexSignal period = materialize_frame(frame);
    ComplexSignal out;
    out.fs = period.fs;
    out.t0 = 0.0;
    out.data.reserve(period.size() * static_cast<std::size_t>(repetitions));
    for (int r = 0; r < repetitions; ++r)
        out.data.insert(out.data.end(), period.data.begin(), period.data.end());
    return out;
}

double duty_cycle(double t_active, double t_pri) {
    if (t_active < 0.0 || t_pri <= 0.0 || t_active > t_pri)
        throw std::domain_error("duty_cycle: 0 <= T_active <= T_pri required");
    return t_active / t_pri;
}

double mean_data_rate(double fs, int adc_bits, double gamma, int streams) {
    return fs * static_cast<double>(adc_bits) * gamma * static_cast<double>(streams);
}

double effective_bandwidth_chirp(double symbol_T, double dt_max, double bandwidth) {
    if (dt_max < 0.0 || dt_max > symbol_T)
        throw std::domain_error("effective_bandwidth_chirp: 0 <= dt_max <= T required");
    return (symbol_T - dt_max) / symbol_T * bandwidth;
}

TimingBudget timing_budget(double dr_max, double t_pri, double v_max) {
    if (dr_max <= 0.0 || t_pri <= 0.0 || v_max <= 0.0)
        throw std::domain_error("timing_budget: all inputs must be positive");
    return {2.0 * dr_max / kC0, t_pri, 2.0 * dr_max / v_max};
}

}  // namespace sarkit::waveform
