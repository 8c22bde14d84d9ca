#include "oppforge/ide_config.hpp"

#include "oppforge/error.hpp"

namespace fs = std::filesystem;

namespace oppforge {

const char* to_string(DebugFlavor flavor)
{
    return flavor == DebugFlavor::gdb ? "gdb" : "lldb";
}

JsonDoc generate_launch_config(const RunSpec& spec, DebugFlavor flavor, const OmnetInstall& install)
{
    JsonDoc config = JsonDoc::object();
    const char* flavor_label = flavor == DebugFlavor::lldb ? "CodeLLDB" : "GDB";
    config["name"] = "Launch " + spec.name + " - " + flavor_label + " (OMNeT++)";
    config["type"] = flavor == DebugFlavor::lldb ? "lldb" : "cppdbg";
    config["request"] = "launch";
    config["program"] = install.runner_debug.generic_string();
    config["args"] = run_args(spec);
    config["stopOnEntry"] = false;
    config["cwd"] = spec.working_dir;

    if (flavor == DebugFlavor::lldb) {
        if (install.lldb_formatter) {
            config["initCommands"] = JsonDoc::array(
                {"command script import " + install.lldb_formatter->generic_string()});
        }
    } else {
        config["MIMode"] = "gdb";
        JsonDoc pretty = JsonDoc::object();
        pretty["description"] = "Enable pretty-printing for gdb";
        pretty["text"] = "-enable-pretty-printing";
        pretty["ignoreFailures"] = true;
        config["setupCommands"] = JsonDoc::array({pretty});
    }
    return config;
}

void merge_named_array(JsonDoc& array, const std::vector<JsonDoc>& generated)
{
    for (const JsonDoc& entry : generated) {
        if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
            throw std::invalid_argument("generated entries must be objects with a string name");
        }
        const std::string& name = entry["name"].get_ref<const std::string&>();
        bool replaced = false;
        for (JsonDoc& existing : array) {
            if (existing.is_object() && existing.contains("name") && existing["name"] == name) {
                existing = entry;
                replaced = true;
            }
        }
        if (!replaced) {
            array.push_back(entry);
        }
    }
}

JsonDoc merge_launch(const std::optional<JsonDoc>& existing, const std::vector<JsonDoc>& generated)
{
    JsonDoc result;
    if (!existing || (existing->is_object() && existing->empty())) {
        result = JsonDoc::object();
        result["version"] = "0.2.0";
        result["configurations"] = JsonDoc::array();
    } else {
        if (!existing->is_object()) {
            fail(ErrorKind::MalformedLaunchFile, "launch document root is not an object");
        }
        if (!existing->contains("configurations")) {
            fail(ErrorKind::MalformedLaunchFile, "launch document has no configurations array");
        }
        if (!(*existing)["configurations"].is_array()) {
            fail(ErrorKind::MalformedLaunchFile, "\"configurations\" is not an array");
        }
        if (existing->contains("version")) {
            result = *existing;
        } else {
            result = JsonDoc::object();
            result["version"] = "0.2.0";
            for (auto it = existing->begin(); it != existing->end(); ++it) {
                result[it.key()] = it.value();
            }
        }
    }
    merge_named_array(result["configurations"], generated);
    return result;
}

JsonDoc generate_cmake_kits(const std::string& kit_name,
                            const fs::path& env_script,
                            const fs::path& c_compiler,
                            const fs::path& cxx_compiler)
{
    JsonDoc kit = JsonDoc::object();
    kit["name"] = kit_name;
    kit["environmentSetupScript"] = env_script.generic_string();
    JsonDoc compilers = JsonDoc::object();
    compilers["C"] = c_compiler.generic_string();
    compilers["CXX"] = cxx_compiler.generic_string();
    kit["compilers"] = compilers;
    return JsonDoc::array({kit});
}

std::string generate_env_script(const OmnetInstall& install,
                                EnvScriptStyle style,
                                const std::optional<fs::path>& venv_activate)
{
    std::string script;
    if (style == EnvScriptStyle::windows_cmd) {
        for (const fs::path& entry : install.tool_path_entries) {
            script += "set PATH=" + entry.generic_string() + ";%PATH%\r\n";
        }
        if (venv_activate) {
            script += "\r\n";
            script += "rem Optional: Activate a python virtual environment\r\n";
            script += "set current_dir=%cd%\r\n";
            script += "call " + venv_activate->generic_string() + "\r\n";
        }
    } else {
        for (const fs::path& entry : install.tool_path_entries) {
            script += "export PATH=" + entry.generic_string() + ":$PATH\n";
        }
        if (venv_activate) {
            script += "\n";
            script += "# Optional: Activate a python virtual environment\n";
            script += ". " + venv_activate->generic_string() + "\n";
        }
    }
    return script;
}

} // namespace oppforge
