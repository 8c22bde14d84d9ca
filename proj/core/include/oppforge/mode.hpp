#pragma once

namespace oppforge {

// Build variant selector shared by import, lowering, and run synthesis.
enum class BuildMode { release, debug };

inline const char* to_string(BuildMode mode)
{
    return mode == BuildMode::release ? "release" : "debug";
}

} // namespace oppforge
