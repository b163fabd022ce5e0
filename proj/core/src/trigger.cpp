#include "sarkit/trigger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sarkit/fft.hpp"

namespace sarkit::trigger {

namespace {

// Maximal-length LFSR tap sets for orders 3..20 (one primitive polynomial per
// order), bit positions counted from 1.
const std::vector<int>& taps_for_order(int order) {
    static const std::vector<std::vector<int>> kTaps = {
        {3, 2},          {4, 3},          {5, 3},           {6, 5},
        {7, 6},          {8, 6, 5, 4},    {9, 5},           {10, 7},
        {11, 9},         {12, 6, 4, 1},   {13, 4, 3, 1},    {14, 5, 3, 1},
        {15, 14},        {16, 15, 13, 4}, {17, 14},         {18, 11},
        {19, 6, 2, 1},   {20, 17},
    };
    if (order < 3 || order > 20) throw std::invalid_argument("generate_pn: order must be in [3, 20]");
    return kTaps[static_cast<std::size_t>(order - 3)];
}

}  // namespace

ComplexSignal PnSequence::as_signal(double fs) const {
    ComplexSignal out;
    out.fs = fs;
    out.data.reserve(chips.size());
    for (double c : chips) out.data.emplace_back(c, 0.0);
    return out;
}

PnSequence generate_pn(int order, std::uint64_t seed) {
    const auto& taps = taps_for_order(order);
    const std::uint64_t period = (1ULL << order) - 1ULL;

    PnSequence pn;
    pn.order = order;
    pn.seed = seed;
    pn.chips.reserve(period);

    // Nonzero initial fill derived from the seed; different fills are cyclic
    // shifts of the same m-sequence.
    std::uint64_t state = (seed % period) + 1ULL;
    const std::uint64_t mask = period;  // low `order` bits
    for (std::uint64_t i = 0; i < period; ++i) {
        const int out_bit = static_cast<int>((state >> (order - 1)) & 1ULL);
        pn.chips.push_back(out_bit ? -1.0 : 1.0);
        std::uint64_t fb = 0;
        for (int tap : taps) fb ^= (state >> (tap - 1)) & 1ULL;
        state = ((state << 1) | fb) & mask;
    }
    return pn;
}

std::vector<TriggerEvent> correlate_detect(const ComplexSignal& stream, const PnSequence& pn,
                                           double threshold) {
    if (threshold <= 0.0 || threshold > 1.0)
        throw std::invalid_argument("correlate_detect: threshold in (0, 1] required");
    const std::size_t len = stream.size();
    const std::size_t pn_len = pn.length();
    if (pn_len == 0 || len < pn_len) return {};

    double ref_energy = 0.0;
    for (double c : pn.chips) ref_energy += c * c;
    const double ref_norm = std::sqrt(ref_energy);

    // Windowed stream energy from prefix sums.
    std::vector<double> energy_prefix(len + 1, 0.0);
    for (std::size_t i = 0; i < len; ++i)
        energy_prefix[i + 1] = energy_prefix[i] + std::norm(stream.data[i]);

    // Overlap-save FFT correlation. Per block: IFFT(FFT(s) * conj(FFT(p)))/m
    // yields corr[i] = sum_j p[j] s[i+j] for the first hop positions.
    std::size_t fft_len = 1;
    while (fft_len < 4 * pn_len) fft_len <<= 1;
    fft_len = std::max<std::size_t>(fft_len, 1024);
    const std::size_t hop = fft_len - pn_len + 1;

    std::vector<cplx> ref(fft_len, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < pn_len; ++j) ref[j] = cplx(pn.chips[j], 0.0);
    const std::vector<cplx> ref_fft = fft_forward(ref);

    const std::size_t n_positions = len - pn_len + 1;
    std::vector<TriggerEvent> candidates;
    std::vector<cplx> block(fft_len);
    for (std::size_t base = 0; base < n_positions; base += hop) {
        const std::size_t avail = std::min(fft_len, len - base);
        for (std::size_t i = 0; i < avail; ++i) block[i] = stream.data[base + i];
        std::fill(block.begin() + static_cast<long>(avail), block.end(), cplx(0.0, 0.0));
        auto spec = fft_forward(block);
        for (std::size_t i = 0; i < fft_len; ++i) spec[i] *= std::conj(ref_fft[i]);
        const auto corr = fft_backward(spec);

        const std::size_t block_positions = std::min(hop, n_positions - base);
        const double inv_m = 1.0 / static_cast<double>(fft_len);
        for (std::size_t i = 0; i < block_positions; ++i) {
            const std::size_t pos = base + i;
            const double win_energy = energy_prefix[pos + pn_len] - energy_prefix[pos];
            if (win_energy <= 0.0) continue;
            const double score = std::abs(corr[i]) * inv_m / (ref_norm * std::sqrt(win_energy));
            if (score >= threshold) candidates.push_back({pos, score});
        }
    }

    // Keep the local maximum within one PN length of each detection.
    std::vector<TriggerEvent> events;
    for (const auto& cand : candidates) {
        if (!events.empty() && cand.index < events.back().index + pn_len) {
            if (cand.score > events.back().score) events.back() = cand;
        } else {
            events.push_back(cand);
        }
    }
    return events;
}

ComplexSignal extract_window(const ComplexSignal& stream, const TriggerEvent& event, long offset,
                             std::size_t length) {
    const long start = static_cast<long>(event.index) + offset;
    if (start < 0 || static_cast<std::size_t>(start) + length > stream.size())
        throw std::out_of_range("extract_window: window outside stream bounds");
    ComplexSignal out;
    out.fs = stream.fs;
    out.t0 = stream.t0 + static_cast<double>(start) / stream.fs;
    out.data.assign(stream.data.begin() + start,
                    stream.data.begin() + start + static_cast<long>(length));
    return out;
}

}  // namespace sarkit::trigger
