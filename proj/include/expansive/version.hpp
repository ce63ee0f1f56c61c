#pragma once

namespace expansive {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace expansive
