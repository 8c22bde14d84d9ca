#pragma once

#include "oppforge/mode.hpp"
#include "oppforge/toolchain.hpp"

#include <string>
#include <utility>
#include <vector>

namespace oppforge {

// Everything needed to launch one simulation.
struct RunSpec {
    std::string name;
    std::string target;
    std::string ini_file;
    std::string working_dir;
    std::vector<std::string> ned_folders;
    std::vector<std::string> libraries;
    std::vector<std::string> extra_args;

    friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

struct RunTarget {
    std::vector<std::string> argv;
    std::string working_dir;

    friend bool operator==(const RunTarget&, const RunTarget&) = default;
};

// NED folders joined with ';' into a single argument value.
// Throws EmptyNedSet for an empty list.
std::string format_ned_arg(const std::vector<std::string>& ned_folders);

// Runner arguments shared by run/debug/memcheck targets and the editor debug
// configurations: NED flags, library flags, passthrough args, ini file.
std::vector<std::string> run_args(const RunSpec& spec);

// Synthesizes the run-target family for one spec: run_<name> always,
// debug_<name> for debug builds, memcheck_<name> when Valgrind is present.
std::vector<std::pair<std::string, RunTarget>> make_run_targets(const RunSpec& spec,
                                                                const OmnetInstall& install,
                                                                BuildMode mode,
                                                                bool valgrind_present);

} // namespace oppforge
