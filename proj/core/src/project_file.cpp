#include "oppforge/project_file.hpp"

#include "oppforge/error.hpp"
#include "oppforge/fs_util.hpp"
#include "oppforge/json_doc.hpp"

#include <algorithm>

namespace fs = std::filesystem;

namespace oppforge {

namespace {

[[noreturn]] void bad(const std::string& message)
{
    fail(ErrorKind::InvalidProjectFile, message);
}

void check_keys(const JsonDoc& object, std::initializer_list<const char*> allowed,
                const std::string& context)
{
    for (auto it = object.begin(); it != object.end(); ++it) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* key) { return it.key() == key; })
            == allowed.end()) {
            bad("unknown key \"" + it.key() + "\" in " + context);
        }
    }
}

std::string require_string(const JsonDoc& object, const char* key, const std::string& context)
{
    if (!object.contains(key) || !object[key].is_string()) {
        bad(context + " needs a string \"" + key + "\"");
    }
    return object[key].get<std::string>();
}

std::optional<std::string> optional_string(const JsonDoc& object, const char* key,
                                           const std::string& context)
{
    if (!object.contains(key)) {
        return std::nullopt;
    }
    if (!object[key].is_string()) {
        bad("\"" + std::string(key) + "\" in " + context + " must be a string");
    }
    return object[key].get<std::string>();
}

std::vector<std::string> string_list(const JsonDoc& object, const char* key,
                                     const std::string& context)
{
    std::vector<std::string> out;
    if (!object.contains(key)) {
        return out;
    }
    const JsonDoc& value = object[key];
    if (!value.is_array()) {
        bad("\"" + std::string(key) + "\" in " + context + " must be an array of strings");
    }
    for (const JsonDoc& element : value) {
        if (!element.is_string()) {
            bad("\"" + std::string(key) + "\" in " + context + " must contain only strings");
        }
        out.push_back(element.get<std::string>());
    }
    return out;
}

TargetKind target_kind_from(const std::string& value, const std::string& context)
{
    if (value == "library") {
        return TargetKind::opp_model_library;
    }
    if (value == "executable") {
        return TargetKind::executable;
    }
    if (value == "test") {
        return TargetKind::test_executable;
    }
    bad("unknown target kind \"" + value + "\" in " + context
        + " (expected library, executable, or test)");
}

bool has_wildcard(const std::string& pattern)
{
    return pattern.find_first_of("*?") != std::string::npos;
}

bool match_segment(std::string_view pattern, std::string_view name)
{
    std::size_t p = 0;
    std::size_t n = 0;
    std::size_t star_p = std::string_view::npos;
    std::size_t star_n = 0;
    while (n < name.size()) {
        if (p < pattern.size() && (pattern[p] == name[n] || pattern[p] == '?')) {
            ++p;
            ++n;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star_p = p++;
            star_n = n;
        } else if (star_p != std::string_view::npos) {
            p = star_p + 1;
            n = ++star_n;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') {
        ++p;
    }
    return p == pattern.size();
}

void collect_all_files(const fs::path& root, const fs::path& rel, std::vector<fs::path>& out)
{
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root / rel, ec)) {
        fs::path child = rel / entry.path().filename();
        if (entry.is_directory()) {
            collect_all_files(root, child, out);
        } else if (entry.is_regular_file()) {
            out.push_back(child);
        }
    }
}

void glob_walk(const fs::path& root, const fs::path& rel,
               const std::vector<std::string>& segments, std::size_t index,
               std::vector<fs::path>& out)
{
    if (index >= segments.size()) {
        return;
    }
    const std::string& segment = segments[index];
    const bool last = index + 1 == segments.size();

    if (segment == "**") {
        if (last) {
            collect_all_files(root, rel, out);
            return;
        }
        glob_walk(root, rel, segments, index + 1, out);
        std::error_code ec;
        for (const auto& entry : fs::directory_iterator(root / rel, ec)) {
            if (entry.is_directory()) {
                glob_walk(root, rel / entry.path().filename(), segments, index, out);
            }
        }
        return;
    }

    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root / rel, ec)) {
        std::string name = entry.path().filename().string();
        if (!match_segment(segment, name)) {
            continue;
        }
        fs::path child = rel / name;
        if (last) {
            if (entry.is_regular_file()) {
                out.push_back(child);
            }
        } else if (entry.is_directory()) {
            glob_walk(root, child, segments, index + 1, out);
        }
    }
}

} // namespace

std::vector<fs::path> expand_glob(const fs::path& root, const std::string& pattern)
{
    if (!has_wildcard(pattern)) {
        std::error_code ec;
        if (!fs::is_regular_file(root / pattern, ec)) {
            bad("source file not found: " + pattern);
        }
        return {fs::path(pattern)};
    }

    std::vector<std::string> segments;
    std::string current;
    for (char c : pattern) {
        if (c == '/') {
            if (!current.empty()) {
                segments.push_back(std::move(current));
                current.clear();
            }
        } else {
            current += c;
        }
    }
    if (!current.empty()) {
        segments.push_back(std::move(current));
    }

    std::vector<fs::path> matches;
    glob_walk(root, fs::path(), segments, 0, matches);
    std::sort(matches.begin(), matches.end(),
              [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
    matches.erase(std::unique(matches.begin(), matches.end()), matches.end());
    return matches;
}

ProjectFile load_project_file(const fs::path& path)
{
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        fail(ErrorKind::IoError, "project file not found: " + path.string());
    }

    JsonDoc doc = parse_jsonc(read_file(path));
    if (!doc.is_object()) {
        bad("project file root must be an object");
    }
    check_keys(doc,
               {"omnetpp_root", "mode", "build_dir", "toolchain", "targets", "imports", "runs", "ide"},
               "the project file");

    ProjectFile project;
    project.root = fs::absolute(path).lexically_normal().parent_path();

    if (auto root = optional_string(doc, "omnetpp_root", "the project file")) {
        project.omnetpp_root = join_normal(project.root, *root);
    }
    if (auto mode = optional_string(doc, "mode", "the project file")) {
        if (*mode == "release") {
            project.mode = BuildMode::release;
        } else if (*mode == "debug") {
            project.mode = BuildMode::debug;
        } else {
            bad("mode must be \"release\" or \"debug\"");
        }
    }
    if (auto build_dir = optional_string(doc, "build_dir", "the project file")) {
        if (build_dir->empty() || fs::path(*build_dir).is_absolute()) {
            bad("build_dir must be a non-empty path relative to the project root");
        }
        project.build_dir = *build_dir;
    }

    if (doc.contains("toolchain")) {
        const JsonDoc& toolchain = doc["toolchain"];
        if (!toolchain.is_object()) {
            bad("\"toolchain\" must be an object");
        }
        check_keys(toolchain, {"cxx", "flags_release", "flags_debug", "ldflags"}, "\"toolchain\"");
        project.cxx = optional_string(toolchain, "cxx", "\"toolchain\"");
        project.flags_release = optional_string(toolchain, "flags_release", "\"toolchain\"");
        project.flags_debug = optional_string(toolchain, "flags_debug", "\"toolchain\"");
        project.ldflags = optional_string(toolchain, "ldflags", "\"toolchain\"");
    }

    if (doc.contains("targets")) {
        if (!doc["targets"].is_array()) {
            bad("\"targets\" must be an array");
        }
        for (const JsonDoc& entry : doc["targets"]) {
            if (!entry.is_object()) {
                bad("every target must be an object");
            }
            check_keys(entry, {"name", "kind", "sources", "include_dirs", "defines", "ned_folders", "deps"},
                       "a target");
            TargetDecl decl;
            decl.name = require_string(entry, "name", "a target");
            decl.kind = target_kind_from(require_string(entry, "kind", "target \"" + decl.name + "\""),
                                         "target \"" + decl.name + "\"");
            decl.sources = string_list(entry, "sources", "target \"" + decl.name + "\"");
            decl.include_dirs = string_list(entry, "include_dirs", "target \"" + decl.name + "\"");
            decl.defines = string_list(entry, "defines", "target \"" + decl.name + "\"");
            decl.ned_folders = string_list(entry, "ned_folders", "target \"" + decl.name + "\"");
            decl.deps = string_list(entry, "deps", "target \"" + decl.name + "\"");
            project.targets.push_back(std::move(decl));
        }
    }

    if (doc.contains("imports")) {
        if (!doc["imports"].is_array()) {
            bad("\"imports\" must be an array");
        }
        for (const JsonDoc& entry : doc["imports"]) {
            if (!entry.is_object()) {
                bad("every import must be an object");
            }
            check_keys(entry, {"makefile", "root"}, "an import");
            ImportDecl decl;
            decl.makefile = join_normal(project.root, require_string(entry, "makefile", "an import"));
            if (auto root = optional_string(entry, "root", "an import")) {
                decl.root = join_normal(project.root, *root);
            } else {
                decl.root = decl.makefile.parent_path();
            }
            if (!fs::is_regular_file(decl.makefile, ec)) {
                bad("imported Makefile not found: " + decl.makefile.string());
            }
            project.imports.push_back(std::move(decl));
        }
    }

    if (doc.contains("runs")) {
        if (!doc["runs"].is_array()) {
            bad("\"runs\" must be an array");
        }
        for (const JsonDoc& entry : doc["runs"]) {
            if (!entry.is_object()) {
                bad("every run must be an object");
            }
            check_keys(entry, {"name", "target", "ini", "workdir", "args"}, "a run");
            RunDecl decl;
            decl.name = require_string(entry, "name", "a run");
            decl.target = require_string(entry, "target", "run \"" + decl.name + "\"");
            decl.ini = join_normal(project.root, require_string(entry, "ini", "run \"" + decl.name + "\""));
            if (auto workdir = optional_string(entry, "workdir", "run \"" + decl.name + "\"")) {
                decl.workdir = join_normal(project.root, *workdir);
            }
            decl.extra_args = string_list(entry, "args", "run \"" + decl.name + "\"");
            if (!fs::is_regular_file(decl.ini, ec)) {
                bad("ini file for run \"" + decl.name + "\" not found: " + decl.ini.string());
            }
            project.runs.push_back(std::move(decl));
        }
    }

    if (doc.contains("ide")) {
        const JsonDoc& ide = doc["ide"];
        if (!ide.is_object()) {
            bad("\"ide\" must be an object");
        }
        check_keys(ide, {"kit_name", "flavors", "env_style", "venv", "c_compiler", "cxx_compiler"},
                   "\"ide\"");
        IdeDecl decl;
        decl.kit_name = optional_string(ide, "kit_name", "\"ide\"");
        for (const std::string& flavor : string_list(ide, "flavors", "\"ide\"")) {
            if (flavor == "lldb") {
                decl.flavors.push_back(DebugFlavor::lldb);
            } else if (flavor == "gdb") {
                decl.flavors.push_back(DebugFlavor::gdb);
            } else {
                bad("unknown debug flavor \"" + flavor + "\" (expected lldb or gdb)");
            }
        }
        if (decl.flavors.empty()) {
            decl.flavors.push_back(DebugFlavor::lldb);
        }
        if (auto style = optional_string(ide, "env_style", "\"ide\"")) {
            if (*style == "windows_cmd") {
                decl.env_style = EnvScriptStyle::windows_cmd;
            } else if (*style == "posix_sh") {
                decl.env_style = EnvScriptStyle::posix_sh;
            } else {
                bad("env_style must be \"windows_cmd\" or \"posix_sh\"");
            }
        }
        if (auto venv = optional_string(ide, "venv", "\"ide\"")) {
            decl.venv = fs::path(*venv);
        }
        if (auto compiler = optional_string(ide, "c_compiler", "\"ide\"")) {
            decl.c_compiler = fs::path(*compiler);
        }
        if (auto compiler = optional_string(ide, "cxx_compiler", "\"ide\"")) {
            decl.cxx_compiler = fs::path(*compiler);
        }
        project.ide = std::move(decl);
    }

    return project;
}

TargetGraph build_graph(const ProjectFile& project, BuildMode mode)
{
    TargetGraph graph;
    for (const ImportDecl& import : project.imports) {
        VarMap vars = parse_opp_makefile(read_file(import.makefile));
        ProjectManifest manifest = manifest_from_vars(vars, import.root, mode);
        graph = import_opp_target(graph, manifest);
    }
    for (const TargetDecl& decl : project.targets) {
        std::vector<fs::path> sources;
        for (const std::string& pattern : decl.sources) {
            for (fs::path& match : expand_glob(project.root, pattern)) {
                if (std::find(sources.begin(), sources.end(), match) == sources.end()) {
                    sources.push_back(std::move(match));
                }
            }
        }
        std::vector<fs::path> ned_folders;
        ned_folders.reserve(decl.ned_folders.size());
        for (const std::string& folder : decl.ned_folders) {
            ned_folders.emplace_back(folder);
        }
        graph = add_opp_target(graph, decl.name, decl.kind, sources, decl.include_dirs,
                               decl.defines, std::move(ned_folders), decl.deps);
    }
    return graph;
}

RunSpec make_run_spec(const ProjectFile& project,
                      const TargetGraph& graph,
                      const RunDecl& run,
                      BuildMode mode)
{
    const Target& target = graph.at(run.target);

    RunSpec spec;
    spec.name = run.name;
    spec.target = run.target;
    spec.ini_file = run.ini.generic_string();
    spec.working_dir = (run.workdir ? *run.workdir : project.root).generic_string();
    spec.extra_args = run.extra_args;

    for (const fs::path& folder : collect_ned_folders(graph, run.target)) {
        std::string resolved = join_normal(project.root, folder).generic_string();
        if (std::find(spec.ned_folders.begin(), spec.ned_folders.end(), resolved)
            == spec.ned_folders.end()) {
            spec.ned_folders.push_back(std::move(resolved));
        }
    }

    // Model libraries to load: the run target itself when it is a library,
    // then its transitive library deps, self-first depth-first.
    std::vector<std::string> visited;
    auto walk = [&](auto&& self, const Target& t) -> void {
        if (std::find(visited.begin(), visited.end(), t.name) != visited.end()) {
            return;
        }
        visited.push_back(t.name);
        if (t.kind == TargetKind::opp_model_library || t.kind == TargetKind::imported) {
            fs::path artifact = t.kind == TargetKind::imported
                ? t.output_artifact
                : project.build_dir / artifact_path(t, mode);
            std::string resolved = join_normal(project.root, artifact).generic_string();
            if (std::find(spec.libraries.begin(), spec.libraries.end(), resolved)
                == spec.libraries.end()) {
                spec.libraries.push_back(std::move(resolved));
            }
        }
        for (const std::string& dep : t.deps) {
            self(self, graph.at(dep));
        }
    };
    walk(walk, target);

    return spec;
}

LowerOptions lower_options_for(const ProjectFile& project, const OmnetInstall& install)
{
    LowerOptions options = lower_options_from_install(install);
    if (project.cxx) {
        options.cxx = *project.cxx;
    }
    if (project.flags_release) {
        options.flags_release = *project.flags_release;
    }
    if (project.flags_debug) {
        options.flags_debug = *project.flags_debug;
    }
    if (project.ldflags) {
        options.ldflags = *project.ldflags;
    }
    return options;
}

} // namespace oppforge
