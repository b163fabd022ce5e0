#pragma once

#include <cstddef>
#include <vector>

#include "sarkit/complex_signal.hpp"
#include "sarkit/imaging.hpp"
#include "sarkit/rangeproc.hpp"

namespace sarkit::metrics {

struct CoherenceReport {
    double gamma_cf = 0.0;
    int m_count = 0;
    std::vector<double> phases;      // per-measurement peak phase [rad]
    std::vector<cplx> peak_values;
};

/// |sum s_m|^2 / (M * sum |s_m|^2); 1 for identical phasors, ~1/M for random
/// phases, 0 for destructive summation. Throws on all-zero input.
double coherence_factor(const std::vector<cplx>& peak_values);

/// Phase at a fixed range cell across measurements, wrapped to (-pi, pi].
/// The cell is fixed (picked from the coherently averaged profile by the
/// caller) so noise cannot make the peak hop between cells.
std::vector<double> phase_series(const std::vector<rangeproc::RangeProfile>& profiles,
                                 std::size_t target_cell);

/// Cell index of the peak of the coherently averaged profile stack.
std::size_t average_peak_cell(const std::vector<rangeproc::RangeProfile>& profiles);

/// Full report: values at the averaged-peak cell, their phases and Gamma_cf.
CoherenceReport coherence_report(const std::vector<rangeproc::RangeProfile>& profiles);

/// Distance between the -3 dB crossings bracketing the peak of a cut,
/// linearly interpolated. Throws when a crossing is outside the cut extent.
double resolution_3db(const imaging::Profile1D& cut);

/// In-plane distance between the image argmax (parabolic sub-pixel
/// refinement) and the true position. The truth must lie inside the grid.
double peak_position_error(const imaging::SarImage& image, const scene::Vec3& truth);

/// Refined in-plane argmax position of an image (grid coordinates, meters).
void refined_argmax(const imaging::SarImage& image, double& u, double& v);

}  // namespace sarkit::metrics
