#pragma once

namespace harmap {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace harmap
