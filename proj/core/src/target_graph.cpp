#include "oppforge/target_graph.hpp"

#include "oppforge/error.hpp"

#include <algorithm>

namespace fs = std::filesystem;

namespace oppforge {

const char* to_string(TargetKind kind)
{
    switch (kind) {
    case TargetKind::opp_model_library: return "opp_model_library";
    case TargetKind::executable: return "executable";
    case TargetKind::test_executable: return "test_executable";
    case TargetKind::imported: return "imported";
    }
    return "unknown";
}

bool TargetGraph::contains(std::string_view name) const
{
    return index_.count(std::string(name)) != 0;
}

const Target* TargetGraph::find(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    return it == index_.end() ? nullptr : &targets_[it->second];
}

const Target& TargetGraph::at(std::string_view name) const
{
    const Target* target = find(name);
    if (!target) {
        fail(ErrorKind::UnknownTarget, "no target named '" + std::string(name) + "'");
    }
    return *target;
}

TargetGraph TargetGraph::adding(Target target) const
{
    if (contains(target.name)) {
        fail(ErrorKind::DuplicateTarget, "target '" + target.name + "' already exists");
    }
    TargetGraph next = *this;
    next.index_.emplace(target.name, next.targets_.size());
    next.targets_.push_back(std::move(target));
    return next;
}

TargetGraph add_opp_target(const TargetGraph& graph,
                           std::string name,
                           TargetKind kind,
                           const std::vector<fs::path>& sources,
                           std::vector<std::string> include_dirs,
                           std::vector<std::string> defines,
                           std::vector<fs::path> ned_folders,
                           std::vector<std::string> deps)
{
    if (name.empty()) {
        fail(ErrorKind::InvalidTarget, "target name must not be empty");
    }
    if (kind == TargetKind::imported) {
        fail(ErrorKind::InvalidTarget, "imported targets are added via import_opp_target");
    }

    Target target;
    target.name = std::move(name);
    target.kind = kind;
    target.include_dirs = std::move(include_dirs);
    target.defines = std::move(defines);
    target.own_ned_folders = std::move(ned_folders);
    target.deps = std::move(deps);

    for (const fs::path& source : sources) {
        std::string ext = source.extension().string();
        auto& bucket = [&]() -> std::vector<fs::path>& {
            if (ext == ".cc") {
                return target.cc_sources;
            }
            if (ext == ".msg") {
                return target.msg_sources;
            }
            fail(ErrorKind::UnsupportedSource,
                 "source '" + source.generic_string() + "' has unsupported extension '" + ext + "'");
        }();
        if (std::find(bucket.begin(), bucket.end(), source) == bucket.end()) {
            bucket.push_back(source);
        }
    }

    if ((kind == TargetKind::executable || kind == TargetKind::test_executable)
        && target.cc_sources.empty()) {
        fail(ErrorKind::InvalidTarget,
             "target '" + target.name + "' is an executable and needs at least one .cc source");
    }

    return graph.adding(std::move(target));
}

TargetGraph import_opp_target(const TargetGraph& graph, const ProjectManifest& manifest)
{
    Target target;
    target.name = manifest.name;
    target.kind = TargetKind::imported;
    target.include_dirs = manifest.include_dirs;
    target.defines = manifest.defines;
    target.own_ned_folders = manifest.ned_folders;
    // The artifact is anchored to the foreign project root so dependents can
    // reference it from anywhere.
    fs::path artifact = manifest.output_artifact;
    if (!artifact.is_absolute()) {
        artifact = manifest.project_root / artifact;
    }
    target.output_artifact = artifact.lexically_normal();
    return graph.adding(std::move(target));
}

std::vector<std::string> resolve(const TargetGraph& graph)
{
    const std::vector<Target>& targets = graph.targets();
    std::vector<std::size_t> remaining(targets.size(), 0);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        for (const std::string& dep : targets[i].deps) {
            if (!graph.contains(dep)) {
                fail(ErrorKind::UnknownTarget,
                     "target '" + targets[i].name + "' depends on unknown target '" + dep + "'");
            }
        }
        remaining[i] = targets[i].deps.size();
    }

    std::vector<bool> done(targets.size(), false);
    std::vector<std::string> order;
    order.reserve(targets.size());

    // Kahn's algorithm, always picking the earliest-inserted ready target.
    while (order.size() < targets.size()) {
        std::size_t pick = targets.size();
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (!done[i] && remaining[i] == 0) {
                pick = i;
                break;
            }
        }
        if (pick == targets.size()) {
            std::string names;
            for (std::size_t i = 0; i < targets.size(); ++i) {
                if (!done[i]) {
                    if (!names.empty()) {
                        names += ", ";
                    }
                    names += targets[i].name;
                }
            }
            fail(ErrorKind::CycleDetected, "dependency cycle between targets: " + names);
        }
        done[pick] = true;
        order.push_back(targets[pick].name);
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (done[i]) {
                continue;
            }
            for (const std::string& dep : targets[i].deps) {
                if (dep == targets[pick].name) {
                    --remaining[i];
                }
            }
        }
    }
    return order;
}

namespace {

void collect_ned_dfs(const TargetGraph& graph, const Target& target,
                     std::vector<std::string>& visited, std::vector<fs::path>& out)
{
    if (std::find(visited.begin(), visited.end(), target.name) != visited.end()) {
        return;
    }
    visited.push_back(target.name);
    for (const fs::path& folder : target.own_ned_folders) {
        if (std::find(out.begin(), out.end(), folder) == out.end()) {
            out.push_back(folder);
        }
    }
    for (const std::string& dep : target.deps) {
        collect_ned_dfs(graph, graph.at(dep), visited, out);
    }
}

} // namespace

std::vector<fs::path> collect_ned_folders(const TargetGraph& graph, std::string_view name)
{
    const Target& target = graph.at(name);
    std::vector<std::string> visited;
    std::vector<fs::path> out;
    collect_ned_dfs(graph, target, visited, out);
    return out;
}

} // namespace oppforge
