#pragma once

#include "oppforge/json_doc.hpp"
#include "oppforge/run_config.hpp"
#include "oppforge/toolchain.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace oppforge {

enum class DebugFlavor { gdb, lldb };

const char* to_string(DebugFlavor flavor);

enum class EnvScriptStyle { windows_cmd, posix_sh };

// One debug configuration object for the given run spec. LLDB configurations
// load the install's formatter script via initCommands when it is present;
// GDB configurations use the cppdbg schema with pretty-printing enabled.
JsonDoc generate_launch_config(const RunSpec& spec, DebugFlavor flavor, const OmnetInstall& install);

// Name-keyed replace/append into an array of named objects. Entries whose
// "name" matches a generated one are replaced in place; everything else is
// left untouched; new entries are appended in the given order.
void merge_named_array(JsonDoc& array, const std::vector<JsonDoc>& generated);

// Merges generated configurations into a launch document. User entries are
// preserved; the result always carries a "version" and a "configurations"
// array. Throws MalformedLaunchFile for a non-empty document without a
// configurations array.
JsonDoc merge_launch(const std::optional<JsonDoc>& existing, const std::vector<JsonDoc>& generated);

// One-kit array for cmake-kits.json: name, environmentSetupScript, compilers.
JsonDoc generate_cmake_kits(const std::string& kit_name,
                            const std::filesystem::path& env_script,
                            const std::filesystem::path& c_compiler,
                            const std::filesystem::path& cxx_compiler);

// PATH-prepending setup script; CRLF `set PATH=` lines for cmd, LF `export`
// lines for sh. When a venv activation script is given the script ends with
// the activation call.
std::string generate_env_script(const OmnetInstall& install,
                                EnvScriptStyle style,
                                const std::optional<std::filesystem::path>& venv_activate);

} // namespace oppforge
