#pragma once

#include "oppforge/mode.hpp"
#include "oppforge/msg_pipeline.hpp"
#include "oppforge/target_graph.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace oppforge {

enum class BuildRule { compile, msgc, archive, link_shared, link_exe, phony };

const char* to_string(BuildRule rule);

// One lowered build statement. All paths are relative to the build directory
// (or absolute); variables are emitted in order.
struct BuildStep {
    BuildRule rule = BuildRule::compile;
    std::vector<std::string> inputs;
    std::vector<std::string> implicit_inputs;
    std::vector<std::string> outputs;
    std::vector<std::pair<std::string, std::string>> variables;

    friend bool operator==(const BuildStep&, const BuildStep&) = default;
};

struct BuildPlan {
    std::vector<BuildStep> steps; // a valid topological order of the step DAG
    std::vector<std::string> defaults;
    std::filesystem::path build_dir;

    friend bool operator==(const BuildPlan&, const BuildPlan&) = default;
};

// Toolchain knobs; baseline values come from the install's Makefile.inc and
// may be overridden by the project file.
struct LowerOptions {
    std::string cxx = "c++";
    std::string flags_release = "-O2";
    std::string flags_debug = "-g";
    std::string ldflags;
};

// CXX / CFLAGS_RELEASE / CFLAGS_DEBUG / LDFLAGS from the install's
// Makefile.inc, with defaults for anything missing.
LowerOptions lower_options_from_install(const OmnetInstall& install);

// Filename of a target's built artifact under <build_dir>/<mode>/.
// Imported targets return their pre-built binary path.
std::string artifact_path(const Target& target, BuildMode mode);

// Lowers a resolved graph into an ordered BuildPlan: per target, message
// compiler steps, then compiles of generated and regular sources, then one
// link step, plus a phony alias. Imported targets contribute no steps; their
// artifacts become implicit inputs of dependents' link steps. Include dirs
// and defines propagate transitively from deps.
BuildPlan lower(const TargetGraph& graph,
                const OmnetInstall& install,
                BuildMode mode,
                const std::filesystem::path& build_dir,
                const LowerOptions& options = {});

// Deterministic Ninja text: rule declarations, build statements in plan
// order, then the default line. LF endings, trailing newline.
std::string emit_ninja(const BuildPlan& plan);

} // namespace oppforge
