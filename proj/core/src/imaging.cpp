#include "sarkit/imaging.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "sarkit/constants.hpp"
#include "sarkit/parallel.hpp"

namespace sarkit::imaging {

void PixelGrid::validate() const {
    if (nu < 1 || nv < 1) throw std::invalid_argument("grid: pixel counts must be >= 1");
    if (du <= 0.0 || dv <= 0.0) throw std::invalid_argument("grid: pixel pitches must be > 0");
    const double nu_ = u_axis.norm(), nv_ = v_axis.norm();
    if (std::abs(nu_ - 1.0) > 1e-9 || std::abs(nv_ - 1.0) > 1e-9 ||
        std::abs(u_axis.dot(v_axis)) > 1e-9)
        throw std::invalid_argument("grid: axes must be orthonormal");
}

bool PixelGrid::same_geometry(const PixelGrid& o) const {
    return nu == o.nu && nv == o.nv && du == o.du && dv == o.dv &&
           (origin - o.origin).norm() < 1e-12 && (u_axis - o.u_axis).norm() < 1e-12 &&
           (v_axis - o.v_axis).norm() < 1e-12;
}

void PixelGrid::project(const scene::Vec3& p, double& u, double& v) const {
    const scene::Vec3 d = p - origin;
    u = d.dot(u_axis);
    v = d.dot(v_axis);
}

double SarImage::peak_magnitude() const {
    double peak = 0.0;
    for (const auto& v : a) peak = std::max(peak, std::abs(v));
    return peak;
}

SarImage backproject(const std::vector<rangeproc::RangeProfile>& profiles,
                     const scene::Trajectory& tx_traj, const scene::Trajectory& rx_traj,
                     const PixelGrid& grid, const waveform::OfdmParams& params,
                     const BackprojectOptions& options) {
    grid.validate();
    if (profiles.empty()) throw std::invalid_argument("backproject: no profiles");

    const std::size_t m_count = profiles.size();
    const bool bistatic = options.mode == BpMode::kBistatic;

    // Per-measurement geometry and normalization, shared by all pixels.
    struct PulseContext {
        scene::Vec3 tx, rx;
        double sl_tof = 0.0;
        cplx sl_rotation{1.0, 0.0};
        double scale = 1.0;
    };
    std::vector<PulseContext> pulses(m_count);
    for (std::size_t i = 0; i < m_count; ++i) {
        const auto& profile = profiles[i];
        auto& ctx = pulses[i];
        ctx.tx = scene::position_at(tx_traj, profile.t_m);
        ctx.rx = bistatic ? scene::position_at(rx_traj, profile.t_m) : ctx.tx;
        if (bistatic) {
            ctx.sl_tof = scene::tof_sidelink(ctx.tx, ctx.rx);
            // Re-add the sidelink carrier phase so the relative-delay data
            // line up with the absolute phase hypothesis.
            const double ph = -kTwoPi * params.fc * ctx.sl_tof;
            ctx.sl_rotation = cplx(std::cos(ph), std::sin(ph));
        }
        if (options.normalize_profiles) {
            double peak = 0.0;
            for (const auto& v : profile.r) peak = std::max(peak, std::abs(v));
            ctx.scale = peak > 0.0 ? 1.0 / peak : 0.0;
        }
    }

    SarImage image;
    image.grid = grid;
    image.provenance = bistatic ? Provenance::kBistatic : Provenance::kMono;
    image.m_used = static_cast<int>(m_count);
    image.a.assign(static_cast<std::size_t>(grid.nu) * grid.nv, cplx(0.0, 0.0));

    std::atomic<std::size_t> skipped{0};
    parallel_for(static_cast<std::size_t>(grid.nv), options.threads,
                 [&](std::size_t lo, std::size_t hi) {
        std::size_t local_skipped = 0;
        for (std::size_t iv = lo; iv < hi; ++iv) {
            for (int iu = 0; iu < grid.nu; ++iu) {
                const scene::Vec3 x0 = grid.pixel_center(iu, static_cast<int>(iv));
                cplx acc(0.0, 0.0);
                for (std::size_t i = 0; i < m_count; ++i) {
                    const auto& profile = profiles[i];
                    const auto& ctx = pulses[i];
                    const double dt_abs =
                        ((x0 - ctx.tx).norm() + (ctx.rx - x0).norm()) / kC0;
                    const double lookup_tof = bistatic ? dt_abs - ctx.sl_tof : dt_abs;
                    const double range_m =
                        bistatic ? lookup_tof * kC0 : lookup_tof * kC0 / 2.0;
                    const double cell = range_m / profile.cell_size;
                    if (cell < 0.0 ||
                        cell >= static_cast<double>(profile.r.size() - 1)) {
                        ++local_skipped;
                        continue;
                    }
                    const auto i0 = static_cast<std::size_t>(cell);
                    const double w = cell - static_cast<double>(i0);
                    const cplx sample =
                        profile.r[i0] * (1.0 - w) + profile.r[i0 + 1] * w;
                    const double ph = kTwoPi * params.fc * dt_abs;  // -phi_e
                    acc += sample * ctx.sl_rotation * ctx.scale *
                           cplx(std::cos(ph), std::sin(ph));
                }
                image.a[iv * static_cast<std::size_t>(grid.nu) +
                        static_cast<std::size_t>(iu)] = acc;
            }
        }
        skipped += local_skipped;
    });
    image.out_of_swath = skipped.load();
    return image;
}

namespace {

SarImage combined_base(const std::vector<SarImage>& images, Provenance provenance) {
    if (images.empty()) throw std::invalid_argument("combine: no images");
    for (const auto& img : images)
        if (!img.grid.same_geometry(images.front().grid))
            throw std::invalid_argument("combine: grid mismatch");
    SarImage out;
    out.grid = images.front().grid;
    out.provenance = provenance;
    out.m_used = 0;
    for (const auto& img : images) out.m_used += img.m_used;
    out.a.assign(images.front().a.size(), cplx(0.0, 0.0));
    return out;
}

}  // namespace

SarImage combine_coherent(const std::vector<SarImage>& images) {
    SarImage out = combined_base(images, Provenance::kCombinedCoherent);
    for (const auto& img : images) {
        const double peak = img.peak_magnitude();
        if (peak <= 0.0) throw std::invalid_argument("combine_coherent: zero image");
        const double scale = 1.0 / peak;
        for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += img.a[i] * scale;
    }
    return out;
}

SarImage combine_absolute(const std::vector<SarImage>& images) {
    SarImage out = combined_base(images, Provenance::kCombinedAbsolute);
    for (const auto& img : images) {
        const double peak = img.peak_magnitude();
        if (peak <= 0.0) throw std::invalid_argument("combine_absolute: zero image");
        const double scale = 1.0 / peak;
        for (std::size_t i = 0; i < out.a.size(); ++i)
            out.a[i] += cplx(std::abs(img.a[i]) * scale, 0.0);
    }
    return out;
}

Profile1D image_cut(const SarImage& image, CutAxis axis, const scene::Vec3& through,
                    double step) {
    image.grid.validate();
    double u0, v0;
    image.grid.project(through, u0, v0);
    const double iu = u0 / image.grid.du;
    const double iv = v0 / image.grid.dv;
    if (iu < 0.0 || iu > image.grid.nu - 1.0 || iv < 0.0 || iv > image.grid.nv - 1.0)
        throw std::out_of_range("image_cut: point outside grid");

    auto magnitude_at = [&](double fu, double fv) {
        const int i0 = static_cast<int>(fu);
        const int j0 = static_cast<int>(fv);
        const int i1 = std::min(i0 + 1, image.grid.nu - 1);
        const int j1 = std::min(j0 + 1, image.grid.nv - 1);
        const double wu = fu - i0, wv = fv - j0;
        const double m00 = std::abs(image.at(i0, j0));
        const double m10 = std::abs(image.at(i1, j0));
        const double m01 = std::abs(image.at(i0, j1));
        const double m11 = std::abs(image.at(i1, j1));
        return (m00 * (1 - wu) + m10 * wu) * (1 - wv) + (m01 * (1 - wu) + m11 * wu) * wv;
    };

    const bool along_u = axis == CutAxis::kU;
    const double pitch = along_u ? image.grid.du : image.grid.dv;
    if (step <= 0.0) step = pitch / 4.0;
    const double span = along_u ? image.grid.nu * image.grid.du : image.grid.nv * image.grid.dv;
    const int n_steps = static_cast<int>(span / step) + 1;

    Profile1D cut;
    cut.offset_m.reserve(static_cast<std::size_t>(n_steps));
    std::vector<double> mags;
    mags.reserve(static_cast<std::size_t>(n_steps));
    double peak = 0.0;
    const double start = along_u ? -u0 : -v0;
    for (int i = 0; i < n_steps; ++i) {
        const double offset = start + i * step;
        const double fu = along_u ? (u0 + offset) / image.grid.du : iu;
        const double fv = along_u ? iv : (v0 + offset) / image.grid.dv;
        if (fu < 0.0 || fu > image.grid.nu - 1.0 || fv < 0.0 || fv > image.grid.nv - 1.0)
            continue;
        cut.offset_m.push_back(offset);
        const double mag = magnitude_at(fu, fv);
        mags.push_back(mag);
        peak = std::max(peak, mag);
    }
    if (peak <= 0.0) throw std::runtime_error("image_cut: zero cut, normalization undefined");
    cut.value_db.reserve(mags.size());
    for (double mag : mags)
        cut.value_db.push_back(20.0 * std::log10(std::max(mag / peak, 1e-15)));
    return cut;
}

SarImage crop_around(const SarImage& image, const scene::Vec3& center, double half_u,
                     double half_v) {
    image.grid.validate();
    double u0, v0;
    image.grid.project(center, u0, v0);
    const int iu_lo = std::max(0, static_cast<int>(std::ceil((u0 - half_u) / image.grid.du)));
    const int iu_hi =
        std::min(image.grid.nu - 1, static_cast<int>(std::floor((u0 + half_u) / image.grid.du)));
    const int iv_lo = std::max(0, static_cast<int>(std::ceil((v0 - half_v) / image.grid.dv)));
    const int iv_hi =
        std::min(image.grid.nv - 1, static_cast<int>(std::floor((v0 + half_v) / image.grid.dv)));
    if (iu_lo > iu_hi || iv_lo > iv_hi)
        throw std::out_of_range("crop_around: window outside grid");

    SarImage out;
    out.grid = image.grid;
    out.grid.origin = image.grid.origin + image.grid.u_axis * (iu_lo * image.grid.du) +
                      image.grid.v_axis * (iv_lo * image.grid.dv);
    out.grid.nu = iu_hi - iu_lo + 1;
    out.grid.nv = iv_hi - iv_lo + 1;
    out.provenance = image.provenance;
    out.m_used = image.m_used;
    out.a.resize(static_cast<std::size_t>(out.grid.nu) * out.grid.nv);
    for (int iv = 0; iv < out.grid.nv; ++iv)
        for (int iu = 0; iu < out.grid.nu; ++iu)
            out.a[static_cast<std::size_t>(iv) * out.grid.nu + iu] =
                image.at(iu_lo + iu, iv_lo + iv);
    return out;
}

}  // namespace sarkit::imaging
