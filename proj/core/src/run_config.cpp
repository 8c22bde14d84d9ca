#include "oppforge/run_config.hpp"

#include "oppforge/error.hpp"

namespace oppforge {

std::string format_ned_arg(const std::vector<std::string>& ned_folders)
{
    if (ned_folders.empty()) {
        fail(ErrorKind::EmptyNedSet, "a run needs at least one NED folder");
    }
    std::string joined;
    for (const std::string& folder : ned_folders) {
        if (!joined.empty()) {
            joined += ';';
        }
        joined += folder;
    }
    return joined;
}

std::vector<std::string> run_args(const RunSpec& spec)
{
    std::vector<std::string> args;
    args.push_back("-n");
    args.push_back(format_ned_arg(spec.ned_folders));
    for (const std::string& library : spec.libraries) {
        args.push_back("-l");
        args.push_back(library);
    }
    for (const std::string& extra : spec.extra_args) {
        args.push_back(extra);
    }
    args.push_back(spec.ini_file);
    return args;
}

std::vector<std::pair<std::string, RunTarget>> make_run_targets(const RunSpec& spec,
                                                                const OmnetInstall& install,
                                                                BuildMode mode,
                                                                bool valgrind_present)
{
    const std::vector<std::string> args = run_args(spec);

    auto with_runner = [&](const std::string& runner) {
        RunTarget target;
        target.argv.push_back(runner);
        target.argv.insert(target.argv.end(), args.begin(), args.end());
        target.working_dir = spec.working_dir;
        return target;
    };

    std::vector<std::pair<std::string, RunTarget>> targets;
    RunTarget run = with_runner(install.runner_release.generic_string());
    targets.emplace_back("run_" + spec.name, run);

    if (mode == BuildMode::debug) {
        targets.emplace_back("debug_" + spec.name,
                             with_runner(install.runner_debug.generic_string()));
    }
    if (valgrind_present) {
        RunTarget memcheck;
        memcheck.argv = {"valgrind", "--tool=memcheck"};
        memcheck.argv.insert(memcheck.argv.end(), run.argv.begin(), run.argv.end());
        memcheck.working_dir = spec.working_dir;
        targets.emplace_back("memcheck_" + spec.name, std::move(memcheck));
    }
    return targets;
}

} // namespace oppforge
