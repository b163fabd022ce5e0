#include "sarkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sarkit/constants.hpp"

namespace sarkit::metrics {

double coherence_factor(const std::vector<cplx>& peak_values) {
    if (peak_values.empty()) throw std::invalid_argument("coherence_factor: M >= 1 required");
    cplx coherent(0.0, 0.0);
    double incoherent = 0.0;
    for (const auto& s : peak_values) {
        coherent += s;
        incoherent += std::norm(s);
    }
    if (incoherent <= 0.0) throw std::invalid_argument("coherence_factor: all-zero input");
    return std::norm(coherent) / (static_cast<double>(peak_values.size()) * incoherent);
}

std::vector<double> phase_series(const std::vector<rangeproc::RangeProfile>& profiles,
                                 std::size_t target_cell) {
    std::vector<double> phases;
    phases.reserve(profiles.size());
    for (const auto& p : profiles) {
        if (target_cell >= p.r.size())
            throw std::out_of_range("phase_series: cell outside profile");
        phases.push_back(std::arg(p.r[target_cell]));
    }
    return phases;
}

std::size_t average_peak_cell(const std::vector<rangeproc::RangeProfile>& profiles) {
    if (profiles.empty()) throw std::invalid_argument("average_peak_cell: no profiles");
    const std::size_t n = profiles.front().r.size();
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t c = 0; c < n; ++c) {
        cplx acc(0.0, 0.0);
        for (const auto& p : profiles) acc += p.r[c];
        const double mag = std::abs(acc);
        if (mag > best_mag) {
            best_mag = mag;
            best = c;
        }
    }
    return best;
}

CoherenceReport coherence_report(const std::vector<rangeproc::RangeProfile>& profiles) {
    CoherenceReport report;
    report.m_count = static_cast<int>(profiles.size());
    const std::size_t cell = average_peak_cell(profiles);
    report.peak_values.reserve(profiles.size());
    for (const auto& p : profiles) report.peak_values.push_back(p.r[cell]);
    report.phases = phase_series(profiles, cell);
    report.gamma_cf = coherence_factor(report.peak_values);
    return report;
}

double resolution_3db(const imaging::Profile1D& cut) {
    if (cut.value_db.size() < 3) throw std::invalid_argument("resolution_3db: cut too short");
    std::size_t peak = 0;
    for (std::size_t i = 1; i < cut.value_db.size(); ++i)
        if (cut.value_db[i] > cut.value_db[peak]) peak = i;
    if (cut.value_db[peak] <= -0.5)
        throw std::runtime_error("resolution_3db: cut has no unique 0 dB peak");

    const double level = cut.value_db[peak] - 3.0;
    auto cross = [&](bool left) -> double {
        if (left) {
            for (std::size_t i = peak; i-- > 0;) {
                if (cut.value_db[i] <= level) {
                    const double w = (level - cut.value_db[i]) /
                                     (cut.value_db[i + 1] - cut.value_db[i]);
                    return cut.offset_m[i] + w * (cut.offset_m[i + 1] - cut.offset_m[i]);
                }
            }
        } else {
            for (std::size_t i = peak + 1; i < cut.value_db.size(); ++i) {
                if (cut.value_db[i] <= level) {
                    const double w = (level - cut.value_db[i - 1]) /
                                     (cut.value_db[i] - cut.value_db[i - 1]);
                    return cut.offset_m[i - 1] + w * (cut.offset_m[i] - cut.offset_m[i - 1]);
                }
            }
        }
        throw std::runtime_error("resolution_3db: mainlobe clipped by the cut extent");
    };
    return cross(false) - cross(true);
}

void refined_argmax(const imaging::SarImage& image, double& u, double& v) {
    const auto& grid = image.grid;
    int bu = 0, bv = 0;
    double best = -1.0;
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu < grid.nu; ++iu) {
            const double mag = std::abs(image.at(iu, iv));
            if (mag > best) {
                best = mag;
                bu = iu;
                bv = iv;
            }
        }
    if (best <= 0.0) throw std::runtime_error("refined_argmax: zero image");

    auto refine = [](double ym, double y0, double yp) {
        const double denom = ym - 2.0 * y0 + yp;
        if (std::abs(denom) < 1e-300) return 0.0;
        return std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
    };
    double du_off = 0.0, dv_off = 0.0;
    if (bu > 0 && bu < grid.nu - 1)
        du_off = refine(std::abs(image.at(bu - 1, bv)), best, std::abs(image.at(bu + 1, bv)));
    if (bv > 0 && bv < grid.nv - 1)
        dv_off = refine(std::abs(image.at(bu, bv - 1)), best, std::abs(image.at(bu, bv + 1)));
    u = (bu + du_off) * grid.du;
    v = (bv + dv_off) * grid.dv;
}

double peak_position_error(const imaging::SarImage& image, const scene::Vec3& truth) {
    image.grid.validate();
    double tu, tv;
    image.grid.project(truth, tu, tv);
    if (tu < 0.0 || tu > (image.grid.nu - 1) * image.grid.du || tv < 0.0 ||
        tv > (image.grid.nv - 1) * image.grid.dv)
        throw std::out_of_range("peak_position_error: truth outside grid");
    double pu, pv;
    refined_argmax(image, pu, pv);
    return std::hypot(pu - tu, pv - tv);
}

}  // namespace sarkit::metrics
