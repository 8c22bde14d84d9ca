#pragma once

#include "oppforge/build_plan.hpp"
#include "oppforge/ide_config.hpp"
#include "oppforge/mode.hpp"
#include "oppforge/run_config.hpp"
#include "oppforge/target_graph.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace oppforge {

struct TargetDecl {
    std::string name;
    TargetKind kind = TargetKind::opp_model_library;
    std::vector<std::string> sources; // glob patterns relative to the project root
    std::vector<std::string> include_dirs;
    std::vector<std::string> defines;
    std::vector<std::string> ned_folders;
    std::vector<std::string> deps;
};

struct ImportDecl {
    std::filesystem::path makefile;
    std::filesystem::path root;
};

struct RunDecl {
    std::string name;
    std::string target;
    std::filesystem::path ini;
    std::optional<std::filesystem::path> workdir;
    std::vector<std::string> extra_args;
};

struct IdeDecl {
    std::optional<std::string> kit_name;
    std::vector<DebugFlavor> flavors;
    EnvScriptStyle env_style = EnvScriptStyle::posix_sh;
    std::optional<std::filesystem::path> venv;
    std::optional<std::filesystem::path> c_compiler;
    std::optional<std::filesystem::path> cxx_compiler;
};

// The declarative project description (default file name: oppforge.json).
// Read tolerantly as JSONC; unknown keys are rejected.
struct ProjectFile {
    std::filesystem::path root; // directory containing the file, absolute
    std::optional<std::filesystem::path> omnetpp_root;
    BuildMode mode = BuildMode::release;
    std::filesystem::path build_dir = "build";
    std::optional<std::string> cxx;
    std::optional<std::string> flags_release;
    std::optional<std::string> flags_debug;
    std::optional<std::string> ldflags;
    std::vector<TargetDecl> targets;
    std::vector<ImportDecl> imports;
    std::vector<RunDecl> runs;
    std::optional<IdeDecl> ide;
};

// Loads and validates the project file. Referenced import Makefiles and run
// ini files must exist. Throws InvalidProjectFile on schema violations.
ProjectFile load_project_file(const std::filesystem::path& path);

// Sorted, duplicate-free expansion of one glob pattern (supports *, ? and **)
// relative to root. A literal pattern names a file that must exist.
std::vector<std::filesystem::path> expand_glob(const std::filesystem::path& root,
                                               const std::string& pattern);

// Builds the target graph: imported Makefiles first, then declared targets.
TargetGraph build_graph(const ProjectFile& project, BuildMode mode);

// Assembles the full run spec for one run declaration: collected NED folders,
// library load list, and absolute paths throughout.
RunSpec make_run_spec(const ProjectFile& project,
                      const TargetGraph& graph,
                      const RunDecl& run,
                      BuildMode mode);

LowerOptions lower_options_for(const ProjectFile& project, const OmnetInstall& install);

} // namespace oppforge
