#pragma once

namespace clab {

inline constexpr const char* kToolkitName = "concavity-lab";
inline constexpr const char* kToolkitVersion = "0.1.0";

} // namespace clab
