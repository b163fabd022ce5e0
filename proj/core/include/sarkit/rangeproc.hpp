#pragma once

#include <vector>

#include "sarkit/complex_signal.hpp"
#include "sarkit/waveform.hpp"

namespace sarkit::rangeproc {

enum class DataKind { kRaw, kMonoCalibrated, kBistaticCorrected, kSidelink };

/// Length-N complex vector over the subcarrier index.
struct SubcarrierData {
    std::vector<cplx> d;
    DataKind kind = DataKind::kRaw;
};

enum class RangeDomain { kMonostaticTwoWay, kBistaticRelative };

enum class Window { kNone, kHann };

/// Complex range-compressed vector of length N*oversample. `spectrum` keeps
/// the windowed subcarrier data so the profile can be evaluated exactly at
/// fractional cells (refined peaks, phase laws).
struct RangeProfile {
    std::vector<cplx> r;
    std::vector<cplx> spectrum;
    double cell_size = 0.0;  // meters per (oversampled) cell
    RangeDomain domain = RangeDomain::kMonostaticTwoWay;
    int oversample = 1;
    int m = 0;        // measurement index
    double t_m = 0.0; // slow time of the measurement

    /// Exact evaluation of the compressed profile at a fractional cell.
    cplx eval_at(double cell) const;
};

/// Multiply by exp(-j 2 pi fc t) on the signal's own time axis; inverse of
/// waveform::upconvert.
ComplexSignal downconvert(const ComplexSignal& y, double fc);

/// Strip the cyclic prefix and evaluate the subcarrier DFT over one
/// orthogonality window (fs/delta_f samples at the native rate), normalized by
/// the window length so an undistorted symbol returns the code exactly.
SubcarrierData demodulate(const ComplexSignal& y_baseband, const waveform::OfdmParams& params);

/// Remove the known code: D[n] * conj(d_n). Leaves pure delay phasors.
SubcarrierData spectral_divide(const SubcarrierData& d_rx, const waveform::CodeSymbols& code);

/// Compensate the internal system delay estimate (range form):
/// D[n] * exp(+j 2 pi (n delta_f + fc) R_cal_hat / c0).
SubcarrierData calibrate_mono(const SubcarrierData& d, double r_cal_hat,
                              const waveform::OfdmParams& params);

/// Sidelink-referenced correction D_rad[n] / D_sl[n]; every clock-common
/// multiplicative error cancels. Throws on sidelink dropout (any bin below
/// 1e-9 of the median magnitude).
SubcarrierData correct_bistatic(const SubcarrierData& d_rad, const SubcarrierData& d_sl);

/// Zero-padded unnormalized IDFT of the window-weighted subcarrier data.
RangeProfile range_compress(const SubcarrierData& d, Window window, int oversample,
                            const waveform::OfdmParams& params,
                            RangeDomain domain = RangeDomain::kMonostaticTwoWay);

struct Peak {
    std::size_t cell = 0;      // argmax of |r|
    double refined_cell = 0.0; // parabolic sub-cell refinement
    cplx value;                // profile value at the argmax cell
};

/// Argmax of |r|, ties broken toward the lower index; throws on an all-zero
/// profile.
Peak peak_cell(const RangeProfile& profile);

/// Per-measurement processing bundle used by the pipelines.
struct ProcessingConfig {
    Window window = Window::kHann;
    int oversample = 8;
    double r_cal_hat = 0.0;
};

/// Full monostatic chain: downconvert -> demodulate -> spectral divide ->
/// calibrate -> compress.
RangeProfile process_mono(const ComplexSignal& rx, const waveform::OfdmParams& params,
                          const waveform::CodeSymbols& code, const ProcessingConfig& cfg);

/// Bistatic chain without the sidelink correction (spectral division only);
/// the error-analysis pipelines image this data directly.
RangeProfile process_uncorrected(const ComplexSignal& rx, const waveform::OfdmParams& params,
                                 const waveform::CodeSymbols& code, const ProcessingConfig& cfg);

/// Full bistatic chain: both channels demodulated, radar divided by sidelink.
RangeProfile process_bistatic(const ComplexSignal& rx_radar, const ComplexSignal& rx_sidelink,
                              const waveform::OfdmParams& params,
                              const waveform::CodeSymbols& code, const ProcessingConfig& cfg);

}  // namespace sarkit::rangeproc
