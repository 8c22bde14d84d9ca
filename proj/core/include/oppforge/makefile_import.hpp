#pragma once

#include "oppforge/mode.hpp"
#include "oppforge/varmap.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace oppforge {

enum class ManifestKind { shared_library, static_library, executable };

const char* to_string(ManifestKind kind);

// Typed metadata extracted from one opp_makemake-generated Makefile; the
// payload an import target is built from.
struct ProjectManifest {
    std::string name;
    ManifestKind kind = ManifestKind::shared_library;
    std::filesystem::path output_artifact; // relative to project_root
    std::vector<std::string> include_dirs; // absolute
    std::vector<std::filesystem::path> ned_folders; // absolute
    std::vector<std::string> link_libs; // -l names and absolute -L dirs in token order
    std::vector<std::string> defines;
    std::filesystem::path project_root; // absolute

    friend bool operator==(const ProjectManifest&, const ProjectManifest&) = default;
};

// Same grammar as parse_makefile_inc; the conventional mode placeholder $(D)
// is kept symbolic so manifest_from_vars can resolve it per build mode.
VarMap parse_opp_makefile(std::string_view text);

// Lines of the `.nedfolders` file resolved against project_root, or the
// project root itself when the file is absent or names nothing.
std::vector<std::filesystem::path> read_nedfolders(const std::filesystem::path& project_root);

// Builds the manifest from parsed variables. The target kind is decided from
// the flags recorded in MAKEMAKE_OPTIONS (--make-so / --make-lib / default
// executable); recursive per-subdir layouts are rejected.
// Throws MissingVariable for an absent TARGET and UnknownKind when the mode
// flags are contradictory or absent.
ProjectManifest manifest_from_vars(const VarMap& vars,
                                   const std::filesystem::path& project_root,
                                   BuildMode mode);

} // namespace oppforge
