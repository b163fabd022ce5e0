#pragma once

#include <cstdint>
#include <vector>

#include "sarkit/complex_signal.hpp"

namespace sarkit::trigger {

/// Maximal-length +-1 chip sequence from a primitive-polynomial LFSR.
struct PnSequence {
    std::vector<double> chips;
    int order = 0;
    std::uint64_t seed = 0;

    std::size_t length() const { return chips.size(); }
    ComplexSignal as_signal(double fs) const;
};

struct TriggerEvent {
    std::size_t index = 0;  // sample position of the frame start
    double score = 0.0;     // normalized correlation peak in [0, 1]
};

/// Length 2^order - 1 m-sequence; order in [3, 20]. The seed selects the
/// nonzero initial register fill, so equal seeds give identical sequences.
PnSequence generate_pn(int order, std::uint64_t seed);

/// Sliding normalized cross-correlation of the stream against the chips.
/// Events where the score reaches `threshold`, deduplicated to the local
/// maximum within one PN length. Amplitude-independent by normalization.
std::vector<TriggerEvent> correlate_detect(const ComplexSignal& stream, const PnSequence& pn,
                                           double threshold);

/// Contiguous slice starting at event.index + offset.
ComplexSignal extract_window(const ComplexSignal& stream, const TriggerEvent& event, long offset,
                             std::size_t length);

}  // namespace sarkit::trigger
