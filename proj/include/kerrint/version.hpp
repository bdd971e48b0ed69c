#pragma once

namespace kerrint {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kerrint
