#pragma once

#include <filesystem>
#include <string>

namespace oppforge {

// base / p for relative p, normalized, without a trailing separator.
std::filesystem::path join_normal(const std::filesystem::path& base,
                                  const std::filesystem::path& p);

// Whole-file read; throws IoError.
std::string read_file(const std::filesystem::path& path);

// Write-temp-then-rename replace so readers never observe a torn file.
// Parent directories are created as needed. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace oppforge
