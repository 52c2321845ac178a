#pragma once

namespace negw {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kConfigSchemaVersion = 1;

}  // namespace negw
