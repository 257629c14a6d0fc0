#pragma once

namespace qdot {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qdot
