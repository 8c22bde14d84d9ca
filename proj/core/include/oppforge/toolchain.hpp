#pragma once

#include "oppforge/varmap.hpp"
#include "oppforge/version.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace oppforge {

// A characterised simulator installation. All paths are absolute; the value
// is immutable once discovered and safe to share across threads.
struct OmnetInstall {
    std::filesystem::path root;
    VersionId version;
    std::filesystem::path bin_dir;
    std::filesystem::path include_dir;
    std::filesystem::path lib_dir;
    std::filesystem::path msgc_path;
    std::filesystem::path runner_release;
    std::filesystem::path runner_debug;
    std::optional<std::filesystem::path> lldb_formatter;
    // Directories to prepend to PATH, in order, duplicate-free.
    std::vector<std::filesystem::path> tool_path_entries;

    friend bool operator==(const OmnetInstall&, const OmnetInstall&) = default;
};

// Reader for the installation's Makefile.inc variable store.
VarMap parse_makefile_inc(std::string_view text);

// Locates an installation. An explicit override wins; otherwise the first
// search_path entry containing a runner executable is taken, walking up from
// bin directories to the install root. The version marker is the `Version`
// file at the root, falling back to the Makefile.inc version variable.
// Throws NotFound when no installation is located and Incomplete(component)
// when a root was found but a required tool is missing.
OmnetInstall discover(const std::optional<std::filesystem::path>& root_override,
                      const std::vector<std::filesystem::path>& search_path);

} // namespace oppforge
