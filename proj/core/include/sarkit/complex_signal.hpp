#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sarkit {

using cplx = std::complex<double>;

/// Uniformly sampled complex time series. `t0` is the time of sample 0 on the
/// signal's own clock; an OFDM radar segment uses t0 = -T_cp so that the
/// symbol body starts at t = 0.
struct ComplexSignal {
    std::vector<cplx> data;
    double fs = 0.0;  // [samples/s]
    double t0 = 0.0;  // [s]

    std::size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }
    double time_at(std::size_t i) const { return t0 + static_cast<double>(i) / fs; }
    double duration() const { return static_cast<double>(data.size()) / fs; }

    cplx& operator[](std::size_t i) { return data[i]; }
    const cplx& operator[](std::size_t i) const { return data[i]; }
};

}  // namespace sarkit
