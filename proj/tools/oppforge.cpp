#include "oppforge/build_plan.hpp"
#include "oppforge/error.hpp"
#include "oppforge/fs_util.hpp"
#include "oppforge/ide_config.hpp"
#include "oppforge/json_doc.hpp"
#include "oppforge/makefile_import.hpp"
#include "oppforge/project_file.hpp"
#include "oppforge/run_config.hpp"
#include "oppforge/target_graph.hpp"
#include "oppforge/toolchain.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fcntl.h>
#include <iostream>
#include <memory>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace oppforge;

namespace {

// Environment variable consulted for the install root when --root is absent.
constexpr const char* root_env_var = "OMNETPP_ROOT";

std::vector<fs::path> path_env_entries()
{
    std::vector<fs::path> entries;
    const char* value = std::getenv("PATH");
    if (!value) {
        return entries;
    }
    std::string_view rest(value);
    while (!rest.empty()) {
        std::size_t colon = rest.find(':');
        std::string_view entry = rest.substr(0, colon);
        if (!entry.empty()) {
            entries.emplace_back(entry);
        }
        if (colon == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(colon + 1);
    }
    return entries;
}

bool find_on_path(const std::string& name)
{
    for (const fs::path& dir : path_env_entries()) {
        std::error_code ec;
        fs::path candidate = dir / name;
        if (fs::is_regular_file(candidate, ec) && ::access(candidate.c_str(), X_OK) == 0) {
            return true;
        }
    }
    return false;
}

int spawn_process(const std::vector<std::string>& argv, const std::string& working_dir,
                  bool quiet_stdout = false)
{
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const std::string& arg : argv) {
        cargv.push_back(const_cast<char*>(arg.c_str()));
    }
    cargv.push_back(nullptr);

    pid_t pid = ::fork();
    if (pid < 0) {
        fail(ErrorKind::IoError, "fork failed");
    }
    if (pid == 0) {
        if (!working_dir.empty() && ::chdir(working_dir.c_str()) != 0) {
            std::perror("chdir");
            ::_exit(127);
        }
        if (quiet_stdout) {
            int devnull = ::open("/dev/null", O_WRONLY);
            if (devnull >= 0) {
                ::dup2(devnull, STDOUT_FILENO);
                ::close(devnull);
            }
        }
        ::execvp(cargv[0], cargv.data());
        std::perror(cargv[0]);
        ::_exit(127);
    }
    int status = 0;
    if (::waitpid(pid, &status, 0) < 0) {
        fail(ErrorKind::IoError, "waitpid failed");
    }
    if (WIFEXITED(status)) {
        return WEXITSTATUS(status);
    }
    if (WIFSIGNALED(status)) {
        return 128 + WTERMSIG(status);
    }
    return 127;
}

struct GlobalOptions {
    std::string project_path = "oppforge.json";
    std::string mode_flag;
    std::string root_flag;
};

BuildMode resolve_mode(const GlobalOptions& options, const ProjectFile* project)
{
    if (options.mode_flag == "release") {
        return BuildMode::release;
    }
    if (options.mode_flag == "debug") {
        return BuildMode::debug;
    }
    return project ? project->mode : BuildMode::release;
}

OmnetInstall resolve_install(const GlobalOptions& options, const ProjectFile* project)
{
    std::optional<fs::path> override_root;
    if (!options.root_flag.empty()) {
        override_root = fs::path(options.root_flag);
    } else if (const char* env = std::getenv(root_env_var); env && *env) {
        override_root = fs::path(env);
    } else if (project && project->omnetpp_root) {
        override_root = project->omnetpp_root;
    }
    return discover(override_root, path_env_entries());
}

JsonDoc manifest_json(const ProjectManifest& manifest)
{
    JsonDoc doc = JsonDoc::object();
    doc["name"] = manifest.name;
    doc["kind"] = to_string(manifest.kind);
    doc["output_artifact"] = manifest.output_artifact.generic_string();
    doc["project_root"] = manifest.project_root.generic_string();
    doc["include_dirs"] = manifest.include_dirs;
    JsonDoc neds = JsonDoc::array();
    for (const fs::path& folder : manifest.ned_folders) {
        neds.push_back(folder.generic_string());
    }
    doc["ned_folders"] = neds;
    doc["link_libs"] = manifest.link_libs;
    doc["defines"] = manifest.defines;
    return doc;
}

JsonDoc install_json(const OmnetInstall& install)
{
    JsonDoc doc = JsonDoc::object();
    doc["root"] = install.root.generic_string();
    doc["version"] = install.version.raw;
    doc["bin_dir"] = install.bin_dir.generic_string();
    doc["include_dir"] = install.include_dir.generic_string();
    doc["lib_dir"] = install.lib_dir.generic_string();
    doc["msgc"] = install.msgc_path.generic_string();
    doc["runner_release"] = install.runner_release.generic_string();
    doc["runner_debug"] = install.runner_debug.generic_string();
    if (install.lldb_formatter) {
        doc["lldb_formatter"] = install.lldb_formatter->generic_string();
    } else {
        doc["lldb_formatter"] = nullptr;
    }
    JsonDoc entries = JsonDoc::array();
    for (const fs::path& entry : install.tool_path_entries) {
        entries.push_back(entry.generic_string());
    }
    doc["tool_path_entries"] = entries;
    return doc;
}

JsonDoc plan_json(const BuildPlan& plan, BuildMode mode)
{
    JsonDoc doc = JsonDoc::object();
    doc["mode"] = to_string(mode);
    doc["build_dir"] = plan.build_dir.generic_string();
    JsonDoc steps = JsonDoc::array();
    for (const BuildStep& step : plan.steps) {
        JsonDoc entry = JsonDoc::object();
        entry["rule"] = to_string(step.rule);
        entry["outputs"] = step.outputs;
        entry["inputs"] = step.inputs;
        entry["implicit_inputs"] = step.implicit_inputs;
        JsonDoc variables = JsonDoc::object();
        for (const auto& [key, value] : step.variables) {
            variables[key] = value;
        }
        entry["variables"] = variables;
        steps.push_back(std::move(entry));
    }
    doc["steps"] = steps;
    doc["defaults"] = plan.defaults;
    return doc;
}

int cmd_discover(const GlobalOptions& options)
{
    std::unique_ptr<ProjectFile> project;
    std::error_code ec;
    if (fs::is_regular_file(options.project_path, ec)) {
        project = std::make_unique<ProjectFile>(load_project_file(options.project_path));
    }
    OmnetInstall install = resolve_install(options, project.get());
    std::cout << serialize_json(install_json(install));
    return 0;
}

int cmd_import(const GlobalOptions& options, const std::string& makefile_arg,
               const std::string& root_arg)
{
    fs::path makefile(makefile_arg);
    std::error_code ec;
    if (!fs::is_regular_file(makefile, ec)) {
        fail(ErrorKind::NotFound, "cannot read Makefile at " + makefile.string());
    }
    fs::path project_root = root_arg.empty() ? makefile.parent_path() : fs::path(root_arg);
    if (project_root.empty()) {
        project_root = ".";
    }
    VarMap vars = parse_opp_makefile(read_file(makefile));
    ProjectManifest manifest = manifest_from_vars(vars, project_root, resolve_mode(options, nullptr));
    std::cout << serialize_json(manifest_json(manifest));
    return 0;
}

BuildPlan make_plan(const GlobalOptions& options, const ProjectFile& project, BuildMode mode,
                    OmnetInstall* install_out = nullptr)
{
    OmnetInstall install = resolve_install(options, &project);
    TargetGraph graph = build_graph(project, mode);
    BuildPlan plan = lower(graph, install, mode, project.build_dir, lower_options_for(project, install));
    if (install_out) {
        *install_out = install;
    }
    return plan;
}

int cmd_plan(const GlobalOptions& options)
{
    ProjectFile project = load_project_file(options.project_path);
    BuildMode mode = resolve_mode(options, &project);
    BuildPlan plan = make_plan(options, project, mode);
    std::cout << serialize_json(plan_json(plan, mode));
    return 0;
}

int cmd_emit(const GlobalOptions& options, bool check, bool dry_run)
{
    ProjectFile project = load_project_file(options.project_path);
    BuildMode mode = resolve_mode(options, &project);
    BuildPlan plan = make_plan(options, project, mode);
    std::string text = emit_ninja(plan);

    if (dry_run) {
        std::cout << text;
        return 0;
    }

    fs::path build_dir = project.root / plan.build_dir;
    fs::path ninja_file = build_dir / "build.ninja";
    write_file_atomic(ninja_file, text);
    std::cerr << "wrote " << ninja_file.generic_string() << "\n";

    if (check) {
        if (!find_on_path("ninja")) {
            std::cerr << "check skipped: no ninja executable on PATH\n";
            return 0;
        }
        int status = spawn_process({"ninja", "-n", "-C", build_dir.string()}, "", true);
        if (status != 0) {
            fail(ErrorKind::InvalidProjectFile,
                 "ninja -n rejected the emitted plan (exit " + std::to_string(status) + ")");
        }
        std::cerr << "check passed: ninja -n accepted the plan\n";
    }
    return 0;
}

int cmd_run(const GlobalOptions& options, const std::string& name, const std::string& variant,
            bool dry_run)
{
    ProjectFile project = load_project_file(options.project_path);
    BuildMode mode = resolve_mode(options, &project);

    const RunDecl* decl = nullptr;
    for (const RunDecl& candidate : project.runs) {
        if (candidate.name == name) {
            decl = &candidate;
            break;
        }
    }
    if (!decl) {
        fail(ErrorKind::UnknownRunName, "no run named '" + name + "' in the project file");
    }

    OmnetInstall install = resolve_install(options, &project);
    TargetGraph graph = build_graph(project, mode);
    RunSpec spec = make_run_spec(project, graph, *decl, mode);

    auto targets = make_run_targets(spec, install, mode, find_on_path("valgrind"));
    const std::string wanted = variant + "_" + name;
    const RunTarget* target = nullptr;
    for (const auto& [target_name, run_target] : targets) {
        if (target_name == wanted) {
            target = &run_target;
            break;
        }
    }
    if (!target) {
        fail(ErrorKind::VariantUnavailable,
             "variant '" + variant + "' is not available for run '" + name + "'"
                 + (variant == "debug" ? " (requires --mode debug)" : "")
                 + (variant == "memcheck" ? " (requires valgrind on PATH)" : ""));
    }

    if (dry_run) {
        for (const std::string& arg : target->argv) {
            std::cout << arg << "\n";
        }
        return 0;
    }
    return spawn_process(target->argv, target->working_dir);
}

int cmd_gen_ide(const GlobalOptions& options, bool diff, bool strict)
{
    ProjectFile project = load_project_file(options.project_path);
    if (!project.ide) {
        fail(ErrorKind::InvalidProjectFile, "the project file has no \"ide\" section");
    }
    const IdeDecl& ide = *project.ide;
    BuildMode mode = resolve_mode(options, &project);
    OmnetInstall install = resolve_install(options, &project);
    TargetGraph graph = build_graph(project, mode);

    // launch.json
    fs::path vscode_dir = project.root / ".vscode";
    fs::path launch_path = vscode_dir / "launch.json";
    std::optional<JsonDoc> existing_launch;
    std::error_code ec;
    if (fs::is_regular_file(launch_path, ec)) {
        existing_launch = parse_jsonc(read_file(launch_path));
    }

    std::vector<JsonDoc> generated;
    for (const RunDecl& run : project.runs) {
        RunSpec spec = make_run_spec(project, graph, run, mode);
        for (DebugFlavor flavor : ide.flavors) {
            if (flavor == DebugFlavor::lldb && !install.lldb_formatter) {
                if (strict) {
                    fail(ErrorKind::FlavorUnavailable,
                         "lldb requested but the install has no formatter script");
                }
                std::cerr << "warning: no LLDB formatter in " << install.root.generic_string()
                          << "; generating without initCommands\n";
            }
            generated.push_back(generate_launch_config(spec, flavor, install));
        }
    }
    std::string launch_text = serialize_json(merge_launch(existing_launch, generated));

    // cmake-kits.json and the environment script
    const std::string version_tag = install.version.raw;
    const bool windows_style = ide.env_style == EnvScriptStyle::windows_cmd;
    const std::string env_name = "omnetpp-" + version_tag + "env" + (windows_style ? ".cmd" : ".sh");
    fs::path env_path = vscode_dir / env_name;
    const std::string env_ref = "${workspaceFolder}/.vscode/" + env_name;

    fs::path c_compiler;
    fs::path cxx_compiler;
    if (ide.c_compiler && ide.cxx_compiler) {
        c_compiler = *ide.c_compiler;
        cxx_compiler = *ide.cxx_compiler;
    } else {
        fs::path mingw_bin = install.root / "tools/win64/mingw64/bin";
        if (fs::is_regular_file(mingw_bin / "clang.exe", ec)) {
            c_compiler = mingw_bin / "clang.exe";
            cxx_compiler = mingw_bin / "clang++.exe";
        } else if (fs::is_regular_file(mingw_bin / "gcc.exe", ec)) {
            c_compiler = mingw_bin / "gcc.exe";
            cxx_compiler = mingw_bin / "g++.exe";
        } else {
            c_compiler = "cc";
            cxx_compiler = "c++";
        }
    }
    const std::string kit_name = ide.kit_name.value_or("OMNeT++ " + version_tag);
    JsonDoc kit_array = generate_cmake_kits(kit_name, env_ref, c_compiler, cxx_compiler);

    fs::path kits_path = vscode_dir / "cmake-kits.json";
    JsonDoc kits_doc = JsonDoc::array();
    if (fs::is_regular_file(kits_path, ec)) {
        kits_doc = parse_jsonc(read_file(kits_path));
        if (!kits_doc.is_array()) {
            fail(ErrorKind::MalformedKitsFile, "cmake-kits.json root is not an array");
        }
    }
    std::vector<JsonDoc> kit_entries(kit_array.begin(), kit_array.end());
    merge_named_array(kits_doc, kit_entries);
    std::string kits_text = serialize_json(kits_doc);

    std::string env_text = generate_env_script(install, ide.env_style, ide.venv);

    auto emit_file = [&](const fs::path& path, const std::string& content) {
        std::error_code file_ec;
        const bool exists = fs::is_regular_file(path, file_ec);
        std::string status = "created";
        if (exists) {
            status = read_file(path) == content ? "unchanged" : "modified";
        }
        if (diff) {
            std::cout << status << ": " << path.generic_string() << "\n";
        } else {
            if (status != "unchanged") {
                write_file_atomic(path, content);
            }
            std::cerr << status << ": " << path.generic_string() << "\n";
        }
    };
    emit_file(launch_path, launch_text);
    emit_file(kits_path, kits_text);
    emit_file(env_path, env_text);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Build orchestration for OMNeT++ projects: Makefile import, "
                 "ninja emission, run targets, and editor configuration"};
    app.require_subcommand(1);

    GlobalOptions options;
    app.add_option("--project", options.project_path, "Project file")->capture_default_str();
    app.add_option("--mode", options.mode_flag, "Build mode")
        ->check(CLI::IsMember({"release", "debug"}));
    app.add_option("--root", options.root_flag, "OMNeT++ installation root override");

    CLI::App* discover_cmd =
        app.add_subcommand("discover", "Locate the OMNeT++ installation and print it as JSON");

    std::string import_makefile;
    std::string import_root;
    CLI::App* import_cmd =
        app.add_subcommand("import", "Parse an opp_makemake Makefile and print its manifest as JSON");
    import_cmd->add_option("makefile", import_makefile, "Path to the generated Makefile")->required();
    import_cmd->add_option("project_root", import_root, "Project root (default: the Makefile's directory)");

    CLI::App* plan_cmd = app.add_subcommand("plan", "Print the lowered build plan as JSON");

    bool emit_check = false;
    bool emit_dry = false;
    CLI::App* emit_cmd = app.add_subcommand("emit", "Write build.ninja under the build directory");
    emit_cmd->add_flag("--check", emit_check, "Validate with `ninja -n` when ninja is available");
    emit_cmd->add_flag("--dry-run", emit_dry, "Print the ninja file to stdout instead of writing");

    std::string run_name;
    std::string run_variant = "run";
    bool run_dry = false;
    CLI::App* run_cmd = app.add_subcommand("run", "Execute a synthesized run target");
    run_cmd->add_option("name", run_name, "Run name from the project file")->required();
    run_cmd->add_option("variant", run_variant, "run, debug, or memcheck")
        ->check(CLI::IsMember({"run", "debug", "memcheck"}));
    run_cmd->add_flag("--dry-run", run_dry, "Print the argv, one element per line, without executing");

    bool ide_diff = false;
    bool ide_strict = false;
    CLI::App* gen_ide_cmd = app.add_subcommand(
        "gen-ide", "Generate .vscode/launch.json, cmake-kits.json, and the environment script");
    gen_ide_cmd->add_flag("--diff", ide_diff, "Report changes without writing");
    gen_ide_cmd->add_flag("--strict", ide_strict, "Fail when a requested flavor is unavailable");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(discover_cmd)) {
            return cmd_discover(options);
        }
        if (app.got_subcommand(import_cmd)) {
            return cmd_import(options, import_makefile, import_root);
        }
        if (app.got_subcommand(plan_cmd)) {
            return cmd_plan(options);
        }
        if (app.got_subcommand(emit_cmd)) {
            return cmd_emit(options, emit_check, emit_dry);
        }
        if (app.got_subcommand(run_cmd)) {
            return cmd_run(options, run_name, run_variant, run_dry);
        }
        if (app.got_subcommand(gen_ide_cmd)) {
            return cmd_gen_ide(options, ide_diff, ide_strict);
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == ErrorKind::IoError ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
