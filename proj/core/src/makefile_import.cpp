#include "oppforge/makefile_import.hpp"

#include "oppforge/error.hpp"
#include "oppforge/fs_util.hpp"

#include <algorithm>
#include <sstream>

namespace fs = std::filesystem;

namespace oppforge {

namespace {

std::vector<std::string> split_tokens(std::string_view text)
{
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) {
            ++i;
        }
        std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t') {
            ++i;
        }
        if (i > start) {
            tokens.emplace_back(text.substr(start, i - start));
        }
    }
    return tokens;
}

std::string replace_all(std::string text, std::string_view needle, std::string_view replacement)
{
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), replacement);
        pos += replacement.size();
    }
    return text;
}

// opp_makemake's conventional platform placeholders; the manifest records the
// bare target name and applies POSIX file naming itself.
std::string strip_convention_placeholders(std::string name)
{
    for (const char* placeholder : {"$(LIB_PREFIX)", "$(SHARED_LIB_SUFFIX)", "$(A_LIB_SUFFIX)",
                                    "$(EXE_SUFFIX)", "$(IMPLIB_SUFFIX)", "$(IMPDEF_SUFFIX)"}) {
        name = replace_all(std::move(name), placeholder, "");
    }
    return name;
}

std::string trim_copy(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return std::string(s);
}

ManifestKind kind_from_options(const VarMap& vars)
{
    auto options = vars.lookup("MAKEMAKE_OPTIONS");
    if (!options) {
        fail(ErrorKind::UnknownKind, "MAKEMAKE_OPTIONS not present; cannot classify the target");
    }
    bool make_so = false;
    bool make_lib = false;
    for (const std::string& token : split_tokens(*options)) {
        if (token == "--make-so" || token == "-s") {
            make_so = true;
        } else if (token == "--make-lib" || token == "-a") {
            make_lib = true;
        } else if (token == "-r" || token == "--recurse") {
            fail(ErrorKind::UnknownKind, "recursive per-subdir Makefiles are not supported");
        }
    }
    if (make_so && make_lib) {
        fail(ErrorKind::UnknownKind, "contradictory mode flags (--make-so and --make-lib)");
    }
    if (make_so) {
        return ManifestKind::shared_library;
    }
    if (make_lib) {
        return ManifestKind::static_library;
    }
    return ManifestKind::executable;
}

} // namespace

const char* to_string(ManifestKind kind)
{
    switch (kind) {
    case ManifestKind::shared_library: return "shared_library";
    case ManifestKind::static_library: return "static_library";
    case ManifestKind::executable: return "executable";
    }
    return "unknown";
}

VarMap parse_opp_makefile(std::string_view text)
{
    MakefileParseOptions options;
    options.keep_symbolic = {"D"};
    return parse_makefile_vars(text, options);
}

std::vector<fs::path> read_nedfolders(const fs::path& project_root)
{
    fs::path manifest = project_root / ".nedfolders";
    std::error_code ec;
    std::vector<fs::path> folders;
    if (fs::is_regular_file(manifest, ec)) {
        std::istringstream lines(read_file(manifest));
        std::string line;
        while (std::getline(lines, line)) {
            std::string entry = trim_copy(line);
            if (entry.empty() || entry.front() == '#') {
                continue;
            }
            fs::path resolved = join_normal(project_root, entry);
            if (std::find(folders.begin(), folders.end(), resolved) == folders.end()) {
                folders.push_back(resolved);
            }
        }
    }
    if (folders.empty()) {
        folders.push_back(project_root.lexically_normal());
    }
    return folders;
}

ProjectManifest manifest_from_vars(const VarMap& vars, const fs::path& project_root, BuildMode mode)
{
    ProjectManifest manifest;
    manifest.project_root = fs::absolute(project_root).lexically_normal();

    auto target = vars.lookup("TARGET");
    if (!target) {
        fail(ErrorKind::MissingVariable, "TARGET is not defined in the Makefile");
    }
    manifest.kind = kind_from_options(vars);

    std::string debug_suffix = "_dbg";
    if (auto d = vars.lookup("D"); d && !d->empty()) {
        debug_suffix = std::string(*d);
    }
    const std::string mode_suffix = mode == BuildMode::debug ? debug_suffix : std::string();
    auto resolve_placeholder = [&](std::string text) {
        return replace_all(std::move(text), "$(D)", mode_suffix);
    };

    std::string name_source(vars.lookup("TARGET_NAME").value_or(*target));
    manifest.name = resolve_placeholder(strip_convention_placeholders(name_source));
    if (manifest.name.empty()) {
        fail(ErrorKind::MissingVariable, "TARGET resolves to an empty name");
    }
    if (manifest.name.find('/') != std::string::npos || manifest.name.find('\\') != std::string::npos) {
        fail(ErrorKind::UnknownKind, "TARGET '" + manifest.name + "' contains path separators");
    }

    std::string artifact_name;
    switch (manifest.kind) {
    case ManifestKind::shared_library: artifact_name = "lib" + manifest.name + ".so"; break;
    case ManifestKind::static_library: artifact_name = "lib" + manifest.name + ".a"; break;
    case ManifestKind::executable: artifact_name = manifest.name; break;
    }
    fs::path target_dir(resolve_placeholder(std::string(vars.lookup("TARGET_DIR").value_or("."))));
    manifest.output_artifact = (target_dir / artifact_name).lexically_normal();

    if (auto include_path = vars.lookup("INCLUDE_PATH")) {
        std::vector<std::string> tokens = split_tokens(resolve_placeholder(std::string(*include_path)));
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            std::string dir;
            if (tokens[i] == "-I" && i + 1 < tokens.size()) {
                dir = tokens[++i];
            } else if (tokens[i].starts_with("-I")) {
                dir = tokens[i].substr(2);
            } else {
                continue;
            }
            std::string resolved = join_normal(manifest.project_root, dir).generic_string();
            if (std::find(manifest.include_dirs.begin(), manifest.include_dirs.end(), resolved)
                == manifest.include_dirs.end()) {
                manifest.include_dirs.push_back(std::move(resolved));
            }
        }
    }

    if (auto libs = vars.lookup("LIBS")) {
        std::vector<std::string> tokens = split_tokens(resolve_placeholder(std::string(*libs)));
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const std::string& token = tokens[i];
            if (token == "-l" && i + 1 < tokens.size()) {
                manifest.link_libs.push_back(tokens[++i]);
            } else if (token.starts_with("-l")) {
                manifest.link_libs.push_back(token.substr(2));
            } else if (token == "-L" && i + 1 < tokens.size()) {
                manifest.link_libs.push_back(join_normal(manifest.project_root, tokens[++i]).generic_string());
            } else if (token.starts_with("-L")) {
                manifest.link_libs.push_back(join_normal(manifest.project_root, token.substr(2)).generic_string());
            } else {
                manifest.link_libs.push_back(token);
            }
        }
    }

    if (auto defines = vars.lookup("DEFINES")) {
        for (std::string& token : split_tokens(resolve_placeholder(std::string(*defines)))) {
            if (token.starts_with("-D")) {
                token.erase(0, 2);
            }
            if (!token.empty()) {
                manifest.defines.push_back(std::move(token));
            }
        }
    }

    manifest.ned_folders = read_nedfolders(manifest.project_root);
    return manifest;
}

} // namespace oppforge
