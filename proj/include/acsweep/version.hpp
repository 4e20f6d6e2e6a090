#pragma once

namespace acsweep {

inline constexpr const char* kToolName = "acsweep";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace acsweep
