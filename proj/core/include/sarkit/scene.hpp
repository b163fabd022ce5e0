#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sarkit/complex_signal.hpp"

namespace sarkit::scene {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

/// Time-stamped node positions (ENU meters); strictly increasing time.
struct Trajectory {
    struct Sample {
        double t;
        Vec3 pos;
    };
    std::vector<Sample> samples;
    std::string node_id;

    void validate() const;
    double t_begin() const { return samples.front().t; }
    double t_end() const { return samples.back().t; }
};

struct PointTarget {
    Vec3 pos;
    cplx reflectivity{1.0, 0.0};
};

struct Scene {
    Trajectory tx;
    std::vector<Trajectory> rx;  // bistatic receivers; monostatic rx == tx
    std::vector<PointTarget> targets;
    double r_cal = 0.0;  // monostatic internal delay expressed as range [m]
};

/// Linear interpolation between bracketing samples; exact at sample instants.
/// Throws std::out_of_range beyond the trajectory span.
Vec3 position_at(const Trajectory& traj, double t);

/// (|tx - target| + |target - rx|) / c0.
double tof_bistatic(const Vec3& tx_pos, const Vec3& rx_pos, const Vec3& target_pos);

/// |tx - rx| / c0.
double tof_sidelink(const Vec3& tx_pos, const Vec3& rx_pos);

/// M samples at t_m = m/f_prf along start + velocity*t.
Trajectory linear_trajectory(const Vec3& start, const Vec3& velocity, double f_prf, int count,
                             std::string node_id = {});

}  // namespace sarkit::scene
