#pragma once

namespace aro {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace aro
