#include "sarkit/scene.hpp"

#include <algorithm>
#include <stdexcept>

#include "sarkit/constants.hpp"

namespace sarkit::scene {

void Trajectory::validate() const {
    if (samples.empty()) throw std::invalid_argument("trajectory: at least one sample required");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!std::isfinite(s.t) || !std::isfinite(s.pos.x) || !std::isfinite(s.pos.y) ||
            !std::isfinite(s.pos.z))
            throw std::invalid_argument("trajectory: non-finite sample");
        if (i > 0 && !(s.t > samples[i - 1].t))
            throw std::invalid_argument("trajectory: time must be strictly increasing");
    }
}

Vec3 position_at(const Trajectory& traj, double t) {
    if (traj.samples.empty()) throw std::out_of_range("position_at: empty trajectory");
    const double t_lo = traj.samples.front().t;
    const double t_hi = traj.samples.back().t;
    // Tolerate roundoff at the span edges (t_m = m/f_prf arithmetic).
    const double slack = 1e-9 * std::max(1.0, std::abs(t_hi));
    if (t < t_lo - slack || t > t_hi + slack)
        throw std::out_of_range("position_at: time outside trajectory span");
    if (traj.samples.size() == 1) return traj.samples.front().pos;
    t = std::clamp(t, t_lo, t_hi);

    auto it = std::lower_bound(traj.samples.begin(), traj.samples.end(), t,
                               [](const Trajectory::Sample& s, double v) { return s.t < v; });
    if (it == traj.samples.begin()) return it->pos;
    if (it == traj.samples.end()) return traj.samples.back().pos;
    const auto& b = *it;
    const auto& a = *(it - 1);
    const double w = (t - a.t) / (b.t - a.t);
    return a.pos + (b.pos - a.pos) * w;
}

double tof_bistatic(const Vec3& tx_pos, const Vec3& rx_pos, const Vec3& target_pos) {
    return ((target_pos - tx_pos).norm() + (rx_pos - target_pos).norm()) / kC0;
}

double tof_sidelink(const Vec3& tx_pos, const Vec3& rx_pos) {
    return (rx_pos - tx_pos).norm() / kC0;
}

Trajectory linear_trajectory(const Vec3& start, const Vec3& velocity, double f_prf, int count,
                             std::string node_id) {
    if (count < 1) throw std::invalid_argument("linear_trajectory: M >= 1 required");
    if (f_prf <= 0.0) throw std::invalid_argument("linear_trajectory: f_prf > 0 required");
    Trajectory traj;
    traj.node_id = std::move(node_id);
    traj.samples.resize(static_cast<std::size_t>(count));
    for (int m = 0; m < count; ++m) {
        const double t = static_cast<double>(m) / f_prf;
        traj.samples[static_cast<std::size_t>(m)] = {t, start + velocity * t};
    }
    return traj;
}

}  // namespace sarkit::scene
