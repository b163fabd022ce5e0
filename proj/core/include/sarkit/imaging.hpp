#pragma once

#include <cstddef>
#include <vector>

#include "sarkit/complex_signal.hpp"
#include "sarkit/rangeproc.hpp"
#include "sarkit/scene.hpp"

namespace sarkit::imaging {

/// Ground-plane pixel grid: origin plus orthonormal in-plane axes.
struct PixelGrid {
    scene::Vec3 origin;
    scene::Vec3 u_axis{1.0, 0.0, 0.0};
    scene::Vec3 v_axis{0.0, 1.0, 0.0};
    double du = 0.05, dv = 0.05;  // [m]
    int nu = 0, nv = 0;

    void validate() const;
    scene::Vec3 pixel_center(int iu, int iv) const {
        return origin + u_axis * (iu * du) + v_axis * (iv * dv);
    }
    bool same_geometry(const PixelGrid& o) const;
    /// In-plane (u, v) coordinates of a point relative to the origin.
    void project(const scene::Vec3& p, double& u, double& v) const;
};

enum class Provenance { kMono, kBistatic, kCombinedCoherent, kCombinedAbsolute };

struct SarImage {
    std::vector<cplx> a;  // nu * nv, iu-major rows stacked by iv
    PixelGrid grid;
    Provenance provenance = Provenance::kMono;
    int m_used = 0;
    std::size_t out_of_swath = 0;  // backprojection lookups outside the profile

    cplx& at(int iu, int iv) { return a[static_cast<std::size_t>(iv) * grid.nu + iu]; }
    const cplx& at(int iu, int iv) const {
        return a[static_cast<std::size_t>(iv) * grid.nu + iu];
    }
    double peak_magnitude() const;
};

enum class BpMode { kMono, kBistatic };

struct BackprojectOptions {
    BpMode mode = BpMode::kMono;
    /// Scale every profile by its own peak magnitude before accumulation.
    bool normalize_profiles = false;
    int threads = 0;
};

/// Time-domain backprojection: for each pixel, sample every range profile at
/// the geometric delay (linear interpolation on the oversampled grid) and
/// accumulate with the expected-phase correction exp(+j 2 pi fc dt).
/// Bistatic profiles are sidelink-relative: the lookup uses dt - tof_sl and
/// the hypothesis re-adds the sidelink carrier phase, both computed from the
/// reported trajectories. Out-of-profile delays contribute zero and are
/// counted in SarImage::out_of_swath.
SarImage backproject(const std::vector<rangeproc::RangeProfile>& profiles,
                     const scene::Trajectory& tx_traj, const scene::Trajectory& rx_traj,
                     const PixelGrid& grid, const waveform::OfdmParams& params,
                     const BackprojectOptions& options);

/// Each image scaled by its own peak magnitude, then complex-summed.
SarImage combine_coherent(const std::vector<SarImage>& images);

/// Sum of peak-normalized magnitudes; phase discarded.
SarImage combine_absolute(const std::vector<SarImage>& images);

enum class CutAxis { kU, kV };

struct Profile1D {
    std::vector<double> offset_m;  // along the cut axis, relative to `through`
    std::vector<double> value_db;  // normalized to the cut peak
};

/// 1-D magnitude cut through a point, bilinear interpolation, normalized dB.
Profile1D image_cut(const SarImage& image, CutAxis axis, const scene::Vec3& through,
                    double step = 0.0);

/// Axis-aligned sub-image around a world point (half-widths in meters);
/// clipped to the parent grid.
SarImage crop_around(const SarImage& image, const scene::Vec3& center, double half_u,
                     double half_v);

}  // namespace sarkit::imaging
