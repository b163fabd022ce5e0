#pragma once

namespace sarkit {

// Propagation speed used project-wide for every range <-> time conversion.
inline constexpr double kC0 = 299792458.0;  // [m/s]

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace sarkit
