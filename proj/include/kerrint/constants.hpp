#pragma once

namespace kerrint {

// CODATA reduced Planck constant, J s.
inline constexpr double kHBar = 1.054571817e-34;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace kerrint
