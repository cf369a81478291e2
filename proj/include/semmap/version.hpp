#pragma once

namespace semmap {

inline constexpr const char* kToolName = "semmap";
inline constexpr const char* kVersion = "0.3.0";
/// Bumped whenever an output file format changes.
inline constexpr int kFormatVersion = 1;

}  // namespace semmap
