#pragma once

#include "oppforge/makefile_import.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace oppforge {

enum class TargetKind { opp_model_library, executable, test_executable, imported };

const char* to_string(TargetKind kind);

struct Target {
    std::string name;
    TargetKind kind = TargetKind::opp_model_library;
    std::vector<std::filesystem::path> cc_sources;
    std::vector<std::filesystem::path> msg_sources;
    std::vector<std::string> include_dirs;
    std::vector<std::string> defines;
    std::vector<std::filesystem::path> own_ned_folders;
    std::vector<std::string> deps;
    std::filesystem::path output_artifact; // imported targets: the pre-built binary

    friend bool operator==(const Target&, const Target&) = default;
};

// Insertion-ordered target collection with value semantics: the add and
// import operations return a new graph, existing snapshots stay untouched.
class TargetGraph {
public:
    bool contains(std::string_view name) const;
    const Target* find(std::string_view name) const;
    const Target& at(std::string_view name) const; // throws UnknownTarget

    const std::vector<Target>& targets() const { return targets_; }
    std::size_t size() const { return targets_.size(); }
    bool empty() const { return targets_.empty(); }

    // Copy-plus-one constructor used by the free functions below.
    TargetGraph adding(Target target) const;

    friend bool operator==(const TargetGraph& a, const TargetGraph& b)
    {
        return a.targets_ == b.targets_;
    }

private:
    std::vector<Target> targets_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Adds a native target; sources are partitioned by extension (.cc / .msg,
// anything else is rejected with UnsupportedSource).
TargetGraph add_opp_target(const TargetGraph& graph,
                           std::string name,
                           TargetKind kind,
                           const std::vector<std::filesystem::path>& sources,
                           std::vector<std::string> include_dirs = {},
                           std::vector<std::string> defines = {},
                           std::vector<std::filesystem::path> ned_folders = {},
                           std::vector<std::string> deps = {});

// Adds a pre-built external project as an imported target.
TargetGraph import_opp_target(const TargetGraph& graph, const ProjectManifest& manifest);

// Deterministic dependencies-first order; ties broken by insertion order.
// Throws CycleDetected naming the offending targets, UnknownTarget for a
// dep that is not in the graph.
std::vector<std::string> resolve(const TargetGraph& graph);

// Self-first depth-first accumulation of own_ned_folders over the target and
// its transitive deps; first occurrence wins.
std::vector<std::filesystem::path> collect_ned_folders(const TargetGraph& graph, std::string_view name);

} // namespace oppforge
