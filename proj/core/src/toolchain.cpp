#include "oppforge/toolchain.hpp"

#include "oppforge/error.hpp"
#include "oppforge/fs_util.hpp"

namespace fs = std::filesystem;

namespace oppforge {

namespace {

constexpr const char* runner_name = "opp_run";

// Canonical version spelling: marker files often carry an "omnetpp-" prefix
// that must not leak into version.raw (it names env scripts and kits).
VersionId parse_marker_version(std::string_view text)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty()
           && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (text.starts_with("omnetpp-")) {
        text.remove_prefix(8);
    }
    return parse_version(text);
}

bool has_runner(const fs::path& bin_dir)
{
    std::error_code ec;
    return fs::is_regular_file(bin_dir / runner_name, ec);
}

fs::path normalize(const fs::path& p)
{
    std::error_code ec;
    fs::path abs = fs::absolute(p, ec);
    if (ec) {
        abs = p;
    }
    return abs.lexically_normal();
}

// The runner executable marks an install: a hit either is the bin directory
// itself or the install root containing one.
std::optional<fs::path> root_from_candidate(const fs::path& dir)
{
    if (has_runner(dir)) {
        if (dir.filename() == "bin") {
            return normalize(dir.parent_path());
        }
        return normalize(dir);
    }
    if (has_runner(dir / "bin")) {
        return normalize(dir);
    }
    return std::nullopt;
}

VersionId read_version_marker(const fs::path& root)
{
    fs::path version_file = root / "Version";
    std::error_code ec;
    if (fs::is_regular_file(version_file, ec)) {
        std::string text = read_file(version_file);
        std::size_t eol = text.find_first_of("\r\n");
        if (eol != std::string::npos) {
            text.resize(eol);
        }
        try {
            return parse_marker_version(text);
        } catch (const Error&) {
            fail(ErrorKind::Incomplete, "version (unparseable Version file at " + version_file.string() + ")");
        }
    }

    fs::path inc_file = root / "Makefile.inc";
    if (fs::is_regular_file(inc_file, ec)) {
        VarMap vars = parse_makefile_inc(read_file(inc_file));
        for (const char* name : {"OMNETPP_VERSION", "OMNETPP_RELEASE"}) {
            if (auto value = vars.lookup(name)) {
                try {
                    return parse_marker_version(*value);
                } catch (const Error&) {
                    // try the next marker variable
                }
            }
        }
    }
    fail(ErrorKind::Incomplete, "version (no Version file or Makefile.inc version variable under "
                                    + root.string() + ")");
}

} // namespace

VarMap parse_makefile_inc(std::string_view text)
{
    return parse_makefile_vars(text);
}

OmnetInstall discover(const std::optional<fs::path>& root_override,
                      const std::vector<fs::path>& search_path)
{
    std::optional<fs::path> root;
    if (root_override) {
        root = root_from_candidate(*root_override);
        if (!root) {
            fail(ErrorKind::NotFound, "no runner executable under override root '"
                                          + root_override->string() + "'");
        }
    } else {
        for (const fs::path& dir : search_path) {
            root = root_from_candidate(dir);
            if (root) {
                break;
            }
        }
        if (!root) {
            fail(ErrorKind::NotFound, "no installation found on the search path");
        }
    }

    OmnetInstall install;
    install.root = *root;
    install.bin_dir = install.root / "bin";
    install.runner_release = install.bin_dir / runner_name;

    std::error_code ec;
    auto require_dir = [&](const fs::path& p, const char* component) {
        if (!fs::is_directory(p, ec)) {
            fail(ErrorKind::Incomplete, std::string(component) + " (expected at " + p.string() + ")");
        }
        return p;
    };
    install.include_dir = require_dir(install.root / "include", "include");
    install.lib_dir = require_dir(install.root / "lib", "lib");

    install.msgc_path = install.bin_dir / "opp_msgc";
    if (!fs::is_regular_file(install.msgc_path, ec)) {
        fail(ErrorKind::Incomplete, "opp_msgc (expected at " + install.msgc_path.string() + ")");
    }

    // opp_run_dbg is the usual name; some trees spell it opp_run_debug.
    install.runner_debug = install.bin_dir / "opp_run_dbg";
    if (!fs::is_regular_file(install.runner_debug, ec)) {
        fs::path alt = install.bin_dir / "opp_run_debug";
        if (fs::is_regular_file(alt, ec)) {
            install.runner_debug = alt;
        } else {
            fail(ErrorKind::Incomplete, "opp_run_dbg (expected at " + install.runner_debug.string() + ")");
        }
    }

    install.version = read_version_marker(install.root);

    if (version_gate(install.version)) {
        for (const char* rel : {"python/omnetpp/lldb/formatters/omnetpp.py", "python/omnetpp/lldb/omnetpp.py"}) {
            fs::path candidate = install.root / rel;
            if (fs::is_regular_file(candidate, ec)) {
                install.lldb_formatter = candidate;
                break;
            }
        }
    }

    install.tool_path_entries.push_back(install.bin_dir);
    for (const char* rel : {"tools/win64/usr/local/bin", "tools/win64/usr/bin",
                            "tools/win64/mingw64/bin", "tools/win64/mingw64/opt/bin"}) {
        fs::path candidate = install.root / rel;
        if (fs::is_directory(candidate, ec)) {
            install.tool_path_entries.push_back(candidate);
        }
    }

    return install;
}

} // namespace oppforge
