#pragma once

#include "oppforge/toolchain.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace oppforge {

// One planned message-compiler invocation. The compiler itself is external;
// this is only the argv, the import search path, and the derived outputs.
struct GenStep {
    std::filesystem::path input;
    std::filesystem::path out_source; // <stem>_m.cc mirrored under the build dir
    std::filesystem::path out_header; // <stem>_m.h
    std::vector<std::string> command; // <msgc> -I <dir>... <input.msg>
    std::vector<std::filesystem::path> import_dirs;

    friend bool operator==(const GenStep&, const GenStep&) = default;
};

// Plans the generation step for one .msg source. Outputs preserve the
// source-relative subpath under build_dir and never escape it.
// Throws NotAMsgFile for inputs without the .msg extension.
GenStep plan_msg(const OmnetInstall& install,
                 const std::filesystem::path& msg,
                 const std::vector<std::filesystem::path>& import_dirs,
                 const std::filesystem::path& build_dir);

// Dotted names from `import a.b.C;` lines outside comments, duplicates
// removed, first-seen order. A scanner, not a validator: unparseable lines
// are skipped.
std::vector<std::string> scan_msg_imports(std::string_view text);

} // namespace oppforge
