#pragma once

namespace ahns {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ahns
