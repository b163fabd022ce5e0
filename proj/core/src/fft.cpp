#include "sarkit/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

#include "sarkit/constants.hpp"

#include <cmath>

namespace sarkit {

namespace {

// FFTW plan creation/destruction is not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<cplx> run_dft(const std::vector<cplx>& x, int sign) {
    if (x.empty()) return {};
    const std::size_t n = x.size();
    fftw_complex* buf = fftw_alloc_complex(n);
    if (!buf) throw std::bad_alloc();
    for (std::size_t i = 0; i < n; ++i) {
        buf[i][0] = x[i].real();
        buf[i][1] = x[i].imag();
    }
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        // FFTW_ESTIMATE keeps planning deterministic, which keeps artifacts
        // bit-identical across runs.
        plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE);
    }
    if (!plan) {
        fftw_free(buf);
        throw std::runtime_error("fft: plan creation failed");
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = cplx(buf[i][0], buf[i][1]);
    fftw_free(buf);
    return out;
}

std::size_t next_fast_size(std::size_t n) {
    // Sizes of the form 2^a * 5^b keep FFTW on fast codelets.
    std::size_t best = 1;
    while (best < n) best <<= 1;
    for (std::size_t p5 = 1; p5 <= best; p5 *= 5) {
        std::size_t p2 = 1;
        while (p2 * p5 < n) p2 <<= 1;
        best = std::min(best, p2 * p5);
    }
    return best;
}

}  // namespace

std::vector<cplx> fft_forward(const std::vector<cplx>& x) { return run_dft(x, FFTW_FORWARD); }

std::vector<cplx> fft_backward(const std::vector<cplx>& x) { return run_dft(x, FFTW_BACKWARD); }

std::vector<cplx> czt_unit_circle(const std::vector<cplx>& c, double theta, std::size_t count) {
    const std::size_t n = c.size();
    if (count == 0) return {};
    if (n == 0) return std::vector<cplx>(count, cplx(0.0, 0.0));

    // y[k] = sum_n c[n] e^{j theta n k};   nk = (n^2 + k^2 - (k-n)^2) / 2
    //      = e^{j theta k^2/2} sum_n (c[n] e^{j theta n^2/2}) e^{-j theta (k-n)^2/2}
    const std::size_t conv_len = n + count - 1;
    const std::size_t m = next_fast_size(conv_len);

    auto half_sq_phase = [theta](std::size_t idx) {
        const double q = 0.5 * theta * static_cast<double>(idx) * static_cast<double>(idx);
        return std::fmod(q, kTwoPi);
    };

    std::vector<cplx> a(m, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = half_sq_phase(i);
        a[i] = c[i] * cplx(std::cos(ph), std::sin(ph));
    }
    // b[k] = e^{-j theta k^2/2}, needed for k in (-(n-1)) .. (count-1);
    // negative lags wrap to the tail of the circular buffer.
    std::vector<cplx> b(m, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < count; ++k) {
        const double ph = half_sq_phase(k);
        b[k] = cplx(std::cos(ph), -std::sin(ph));
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double ph = half_sq_phase(i);
        b[m - i] = cplx(std::cos(ph), -std::sin(ph));
    }

    auto fa = fft_forward(a);
    auto fb = fft_forward(b);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    auto conv = fft_backward(fa);

    std::vector<cplx> out(count);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < count; ++k) {
        const double ph = half_sq_phase(k);
        out[k] = conv[k] * scale * cplx(std::cos(ph), std::sin(ph));
    }
    return out;
}

}  // namespace sarkit
