#include "oppforge/build_plan.hpp"

#include "oppforge/error.hpp"
#include "oppforge/fs_util.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace fs = std::filesystem;

namespace oppforge {

namespace {

fs::path sanitized_relative(const fs::path& input)
{
    fs::path rel = input.is_absolute() ? input.relative_path() : input;
    rel = rel.lexically_normal();
    fs::path out;
    for (const fs::path& part : rel) {
        if (part == "..") {
            continue;
        }
        out /= part;
    }
    return out;
}

// Lexical rebase of a project-relative path to the build directory.
std::string rebase(const fs::path& p, const fs::path& build_dir)
{
    fs::path np = p.lexically_normal();
    if (np.is_absolute()) {
        return np.generic_string();
    }
    fs::path base = build_dir.lexically_normal();
    if (base.is_absolute() || base.empty() || base == ".") {
        return np.generic_string();
    }
    fs::path rel = np.lexically_relative(base);
    if (rel.empty()) {
        return np.generic_string();
    }
    return rel.generic_string();
}

void push_unique(std::vector<std::string>& out, std::string value)
{
    if (std::find(out.begin(), out.end(), value) == out.end()) {
        out.push_back(std::move(value));
    }
}

// Self-first DFS accumulation with first-occurrence dedup, mirroring the NED
// folder propagation rule for include dirs and defines.
void collect_strings(const TargetGraph& graph, const Target& target,
                     std::vector<std::string> Target::*member,
                     std::vector<std::string>& visited, std::vector<std::string>& out)
{
    if (std::find(visited.begin(), visited.end(), target.name) != visited.end()) {
        return;
    }
    visited.push_back(target.name);
    for (const std::string& value : target.*member) {
        push_unique(out, value);
    }
    for (const std::string& dep : target.deps) {
        collect_strings(graph, graph.at(dep), member, visited, out);
    }
}

std::vector<std::string> collect_transitive(const TargetGraph& graph, const Target& target,
                                            std::vector<std::string> Target::*member)
{
    std::vector<std::string> visited;
    std::vector<std::string> out;
    collect_strings(graph, target, member, visited, out);
    return out;
}

struct MsgOrdering {
    std::vector<std::size_t> order;
    std::vector<std::vector<std::size_t>> deps; // per source index, imported source indexes
};

// Orders a target's .msg sources so that imported definitions are generated
// first. Imports are matched by file stem; unreadable files contribute no
// edges, and edges inside an import cycle are dropped.
MsgOrdering order_msg_sources(const std::vector<fs::path>& msgs)
{
    MsgOrdering result;
    result.deps.resize(msgs.size());

    std::unordered_map<std::string, std::size_t> by_stem;
    for (std::size_t i = 0; i < msgs.size(); ++i) {
        by_stem.emplace(msgs[i].stem().string(), i);
    }

    for (std::size_t i = 0; i < msgs.size(); ++i) {
        std::error_code ec;
        if (!fs::is_regular_file(msgs[i], ec)) {
            continue;
        }
        for (const std::string& name : scan_msg_imports(read_file(msgs[i]))) {
            std::size_t dot = name.rfind('.');
            std::string last = dot == std::string::npos ? name : name.substr(dot + 1);
            auto it = by_stem.find(last);
            if (it != by_stem.end() && it->second != i) {
                if (std::find(result.deps[i].begin(), result.deps[i].end(), it->second)
                    == result.deps[i].end()) {
                    result.deps[i].push_back(it->second);
                }
            }
        }
    }

    std::vector<std::size_t> remaining(msgs.size());
    std::vector<bool> done(msgs.size(), false);
    for (std::size_t i = 0; i < msgs.size(); ++i) {
        remaining[i] = result.deps[i].size();
    }
    while (result.order.size() < msgs.size()) {
        std::size_t pick = msgs.size();
        for (std::size_t i = 0; i < msgs.size(); ++i) {
            if (!done[i] && remaining[i] == 0) {
                pick = i;
                break;
            }
        }
        if (pick == msgs.size()) {
            // Import cycle: keep source order for the rest, without edges.
            for (std::size_t i = 0; i < msgs.size(); ++i) {
                if (!done[i]) {
                    result.deps[i].clear();
                    result.order.push_back(i);
                    done[i] = true;
                }
            }
            break;
        }
        done[pick] = true;
        result.order.push_back(pick);
        for (std::size_t i = 0; i < msgs.size(); ++i) {
            if (done[i]) {
                continue;
            }
            for (std::size_t dep : result.deps[i]) {
                if (dep == pick) {
                    --remaining[i];
                }
            }
        }
    }
    return result;
}

std::string escape_ninja_path(std::string_view path)
{
    std::string out;
    out.reserve(path.size());
    for (char c : path) {
        if (c == '$') {
            out += "$$";
        } else if (c == ' ') {
            out += "$ ";
        } else if (c == ':') {
            out += "$:";
        } else {
            out += c;
        }
    }
    return out;
}

std::string escape_ninja_value(std::string_view value)
{
    std::string out;
    out.reserve(value.size());
    for (char c : value) {
        if (c == '$') {
            out += "$$";
        } else {
            out += c;
        }
    }
    return out;
}

constexpr std::string_view ninja_rules =
    "rule compile\n"
    "  command = $cxx $flags $defines $includes -c $in -o $out\n"
    "  description = compile $out\n"
    "\n"
    "rule msgc\n"
    "  command = $msgc $includes $in\n"
    "  description = msgc $in\n"
    "\n"
    "rule archive\n"
    "  command = ar rcs $out $in\n"
    "  description = archive $out\n"
    "\n"
    "rule link_shared\n"
    "  command = $cxx -shared $in $flags -o $out\n"
    "  description = link $out\n"
    "\n"
    "rule link_exe\n"
    "  command = $cxx $in $flags -o $out\n"
    "  description = link $out\n";

} // namespace

const char* to_string(BuildRule rule)
{
    switch (rule) {
    case BuildRule::compile: return "compile";
    case BuildRule::msgc: return "msgc";
    case BuildRule::archive: return "archive";
    case BuildRule::link_shared: return "link_shared";
    case BuildRule::link_exe: return "link_exe";
    case BuildRule::phony: return "phony";
    }
    return "unknown";
}

LowerOptions lower_options_from_install(const OmnetInstall& install)
{
    LowerOptions options;
    fs::path inc_file = install.root / "Makefile.inc";
    std::error_code ec;
    if (!fs::is_regular_file(inc_file, ec)) {
        return options;
    }
    VarMap vars = parse_makefile_inc(read_file(inc_file));
    if (auto cxx = vars.lookup("CXX"); cxx && !cxx->empty()) {
        options.cxx = std::string(*cxx);
    }
    if (auto flags = vars.lookup("CFLAGS_RELEASE"); flags && !flags->empty()) {
        options.flags_release = std::string(*flags);
    }
    if (auto flags = vars.lookup("CFLAGS_DEBUG"); flags && !flags->empty()) {
        options.flags_debug = std::string(*flags);
    }
    if (auto ldflags = vars.lookup("LDFLAGS")) {
        options.ldflags = std::string(*ldflags);
    }
    return options;
}

std::string artifact_path(const Target& target, BuildMode mode)
{
    if (target.kind == TargetKind::imported) {
        return target.output_artifact.generic_string();
    }
    const std::string suffix = mode == BuildMode::debug ? "_dbg" : "";
    std::string file;
    if (target.kind == TargetKind::opp_model_library) {
        file = "lib" + target.name + suffix + ".so";
    } else {
        file = target.name + suffix;
    }
    return std::string(to_string(mode)) + "/" + file;
}

BuildPlan lower(const TargetGraph& graph,
                const OmnetInstall& install,
                BuildMode mode,
                const fs::path& build_dir,
                const LowerOptions& options)
{
    const std::vector<std::string> order = resolve(graph);

    BuildPlan plan;
    plan.build_dir = build_dir;

    const std::string mode_dir = to_string(mode);
    const std::string mode_flags = mode == BuildMode::debug ? options.flags_debug : options.flags_release;

    // Per processed target: its artifact (build-dir relative or absolute) and
    // the generated headers of itself plus its transitive deps.
    std::unordered_map<std::string, std::string> artifacts;
    std::unordered_map<std::string, std::vector<std::string>> header_closure;

    for (const std::string& name : order) {
        const Target& target = graph.at(name);

        std::vector<std::string> dep_headers;
        for (const std::string& dep : target.deps) {
            for (const std::string& header : header_closure.at(dep)) {
                push_unique(dep_headers, header);
            }
        }

        if (target.kind == TargetKind::imported) {
            artifacts.emplace(name, rebase(target.output_artifact, build_dir));
            header_closure.emplace(name, std::move(dep_headers));
            continue;
        }

        if (!target.msg_sources.empty() && install.msgc_path.empty()) {
            fail(ErrorKind::MissingInstallTool,
                 "target '" + name + "' has .msg sources but the install has no message compiler");
        }

        std::vector<std::string> includes;
        for (const std::string& dir : collect_transitive(graph, target, &Target::include_dirs)) {
            push_unique(includes, rebase(dir, build_dir));
        }
        push_unique(includes, install.include_dir.generic_string());
        std::string includes_var;
        for (const std::string& dir : includes) {
            if (!includes_var.empty()) {
                includes_var += ' ';
            }
            includes_var += "-I " + dir;
        }

        std::string defines_var;
        for (const std::string& define : collect_transitive(graph, target, &Target::defines)) {
            if (!defines_var.empty()) {
                defines_var += ' ';
            }
            defines_var += "-D" + define;
        }

        std::string flags_var = mode_flags;
        if (target.kind == TargetKind::opp_model_library) {
            flags_var += " -fPIC";
        }

        const std::vector<fs::path> import_dirs = collect_ned_folders(graph, name);
        std::string msgc_includes;
        for (const fs::path& dir : import_dirs) {
            if (!msgc_includes.empty()) {
                msgc_includes += ' ';
            }
            msgc_includes += "-I " + rebase(dir, build_dir);
        }

        const MsgOrdering msg_order = order_msg_sources(target.msg_sources);
        std::vector<std::string> own_headers;
        std::vector<std::string> gen_sources;
        std::vector<std::string> header_of(target.msg_sources.size());

        for (std::size_t index : msg_order.order) {
            const fs::path& msg = target.msg_sources[index];
            GenStep gen = plan_msg(install, msg, import_dirs, build_dir);

            BuildStep step;
            step.rule = BuildRule::msgc;
            step.inputs.push_back(rebase(msg, build_dir));
            step.outputs.push_back(rebase(gen.out_source, build_dir));
            step.outputs.push_back(rebase(gen.out_header, build_dir));
            for (std::size_t dep : msg_order.deps[index]) {
                push_unique(step.implicit_inputs, header_of[dep]);
            }
            for (const std::string& header : dep_headers) {
                push_unique(step.implicit_inputs, header);
            }
            step.variables.emplace_back("msgc", install.msgc_path.generic_string());
            if (!msgc_includes.empty()) {
                step.variables.emplace_back("includes", msgc_includes);
            }

            header_of[index] = step.outputs[1];
            own_headers.push_back(step.outputs[1]);
            gen_sources.push_back(step.outputs[0]);
            plan.steps.push_back(std::move(step));
        }

        std::vector<std::string> compile_implicit = own_headers;
        for (const std::string& header : dep_headers) {
            push_unique(compile_implicit, header);
        }

        std::vector<std::string> objects;
        auto add_compile = [&](const std::string& source, const fs::path& obj_rel) {
            BuildStep step;
            step.rule = BuildRule::compile;
            step.inputs.push_back(source);
            std::string obj = mode_dir + "/obj/" + obj_rel.generic_string();
            step.outputs.push_back(obj);
            step.implicit_inputs = compile_implicit;
            step.variables.emplace_back("cxx", options.cxx);
            step.variables.emplace_back("flags", flags_var);
            if (!defines_var.empty()) {
                step.variables.emplace_back("defines", defines_var);
            }
            if (!includes_var.empty()) {
                step.variables.emplace_back("includes", includes_var);
            }
            objects.push_back(obj);
            plan.steps.push_back(std::move(step));
        };

        for (const std::string& gen_source : gen_sources) {
            fs::path rel(gen_source); // already build-dir relative
            add_compile(gen_source, rel.parent_path() / (rel.stem().string() + ".o"));
        }
        for (const fs::path& source : target.cc_sources) {
            fs::path rel = sanitized_relative(source);
            add_compile(rebase(source, build_dir), rel.parent_path() / (rel.stem().string() + ".o"));
        }

        std::vector<std::string> dep_artifacts;
        {
            std::vector<std::string> visited;
            auto walk = [&](auto&& self, const Target& t) -> void {
                if (std::find(visited.begin(), visited.end(), t.name) != visited.end()) {
                    return;
                }
                visited.push_back(t.name);
                if (t.name != target.name) {
                    push_unique(dep_artifacts, artifacts.at(t.name));
                }
                for (const std::string& dep : t.deps) {
                    self(self, graph.at(dep));
                }
            };
            walk(walk, target);
        }

        BuildStep link;
        link.rule = target.kind == TargetKind::opp_model_library ? BuildRule::link_shared
                                                                 : BuildRule::link_exe;
        link.inputs = objects;
        link.implicit_inputs = dep_artifacts;
        std::string artifact = artifact_path(target, mode);
        link.outputs.push_back(artifact);
        link.variables.emplace_back("cxx", options.cxx);
        std::string link_flags = options.ldflags;
        for (const std::string& dep_artifact : dep_artifacts) {
            if (!link_flags.empty()) {
                link_flags += ' ';
            }
            link_flags += dep_artifact;
        }
        if (!link_flags.empty()) {
            link.variables.emplace_back("flags", link_flags);
        }
        plan.steps.push_back(std::move(link));

        BuildStep alias;
        alias.rule = BuildRule::phony;
        alias.inputs.push_back(artifact);
        alias.outputs.push_back(name);
        plan.steps.push_back(std::move(alias));

        plan.defaults.push_back(artifact);
        artifacts.emplace(name, artifact);

        std::vector<std::string> closure = own_headers;
        for (const std::string& header : dep_headers) {
            push_unique(closure, header);
        }
        header_closure.emplace(name, std::move(closure));
    }

    std::unordered_set<std::string> seen_outputs;
    for (const BuildStep& step : plan.steps) {
        for (const std::string& output : step.outputs) {
            if (!seen_outputs.insert(output).second) {
                fail(ErrorKind::DuplicateOutput, "output '" + output + "' is produced by two steps");
            }
        }
    }
    return plan;
}

std::string emit_ninja(const BuildPlan& plan)
{
    std::string out(ninja_rules);

    for (const BuildStep& step : plan.steps) {
        out += "\nbuild ";
        bool first = true;
        for (const std::string& output : step.outputs) {
            if (!first) {
                out += ' ';
            }
            first = false;
            out += escape_ninja_path(output);
        }
        out += ": ";
        out += to_string(step.rule);
        for (const std::string& input : step.inputs) {
            out += ' ';
            out += escape_ninja_path(input);
        }
        if (!step.implicit_inputs.empty()) {
            out += " |";
            for (const std::string& input : step.implicit_inputs) {
                out += ' ';
                out += escape_ninja_path(input);
            }
        }
        out += '\n';
        for (const auto& [key, value] : step.variables) {
            out += "  ";
            out += key;
            out += " = ";
            out += escape_ninja_value(value);
            out += '\n';
        }
    }

    if (!plan.defaults.empty()) {
        out += "\ndefault";
        for (const std::string& path : plan.defaults) {
            out += ' ';
            out += escape_ninja_path(path);
        }
        out += '\n';
    }
    return out;
}

} // namespace oppforge
