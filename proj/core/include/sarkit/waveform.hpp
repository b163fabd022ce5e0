#pragma once

#include <cstdint>
#include <vector>

#include "sarkit/complex_signal.hpp"

namespace sarkit::waveform {

/// OFDM waveform description; single source of truth for the transmit signal
/// and for all rate/timing budgets.
struct OfdmParams {
    double fc = 1.2e9;         // carrier frequency [Hz]
    int n_subcarriers = 4096;  // N
    double delta_f = 100e3;    // subcarrier spacing [Hz]
    double symbol_T = 12.5e-6;
    double cp_T = 3.125e-6;
    double fs = 1.024e9;       // DAC/ADC sample rate
    int adc_bits = 14;         // nu, used for rate budgets only
    double f_prf = 100.0;      // measurement rate [Hz]

    double bandwidth() const { return n_subcarriers * delta_f; }
    double t_pri() const { return 1.0 / f_prf; }
    long body_samples() const;
    long cp_samples() const;
    long segment_samples() const { return cp_samples() + body_samples(); }
    /// Samples per orthogonality window 1/delta_f; the demodulation DFT length.
    long dft_samples() const;

    /// Throws std::invalid_argument naming the violated invariant.
    void validate() const;
};

struct CodeSymbols {
    std::vector<cplx> d;  // unit-magnitude code symbols, length N
    std::uint64_t seed = 0;
};

/// N pseudorandom QPSK symbols in {(+-1 +-j)/sqrt(2)}, reproducible from seed.
CodeSymbols generate_code(const OfdmParams& params, std::uint64_t seed);

/// Baseband radar segment: cyclic prefix (copy of the symbol tail) followed by
/// the symbol body evaluated at t = k/fs. t0 = -T_cp so the body starts at 0.
ComplexSignal generate_symbol(const OfdmParams& params, const CodeSymbols& code);

/// Multiply by exp(+j 2 pi fc t) on the signal's own time axis.
ComplexSignal upconvert(const ComplexSignal& x, double fc);

struct SignalFrame {
    ComplexSignal trigger;
    ComplexSignal radar;
    ComplexSignal payload;
    double t_pri = 0.0;
    // Segment boundaries as sample indices within one materialized period.
    long trigger_start = 0;
    long radar_start = 0;
    long payload_start = 0;
    long period_samples = 0;

    double active_duration() const;
    double active_fraction() const { return active_duration() / t_pri; }
};

/// Lay the segments out contiguously (trigger, radar, payload) and record the
/// boundaries; throws std::overflow_error if they exceed T_pri.
SignalFrame assemble_frame(ComplexSignal trigger, ComplexSignal radar, ComplexSignal payload,
                           double t_pri);

/// One zero-padded frame period as a sample stream.
ComplexSignal materialize_frame(const SignalFrame& frame);

/// `repetitions` frame periods back to back.
ComplexSignal materialize_stream(const SignalFrame& frame, int repetitions);

double duty_cycle(double t_active, double t_pri);

double mean_data_rate(double fs, int adc_bits, double gamma, int streams);

/// Effective bandwidth of a chirp of duration T when echoes up to dt_max must
/// fit inside the sweep.
double effective_bandwidth_chirp(double symbol_T, double dt_max, double bandwidth);

struct TimingBudget {
    double dt_sync;  // conventional sync budget 2*dR_max/c0
    double dt_pri;   // slow-time alignment budget, = T_pri
    double dt_loc;   // localization timestamp budget 2*dR_max/v_max
};

TimingBudget timing_budget(double dr_max, double t_pri, double v_max);

}  // namespace sarkit::waveform
