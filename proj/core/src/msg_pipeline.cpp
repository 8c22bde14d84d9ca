#include "oppforge/msg_pipeline.hpp"

#include "oppforge/error.hpp"

#include <algorithm>
#include <cctype>

namespace fs = std::filesystem;

namespace oppforge {

namespace {

// Normalized path usable under the build dir: root components stripped from
// absolute inputs, leading ".." segments dropped.
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

bool name_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

} // namespace

GenStep plan_msg(const OmnetInstall& install,
                 const fs::path& msg,
                 const std::vector<fs::path>& import_dirs,
                 const fs::path& build_dir)
{
    if (msg.extension() != ".msg") {
        fail(ErrorKind::NotAMsgFile, "'" + msg.generic_string() + "' does not end in .msg");
    }

    GenStep step;
    step.input = msg;
    step.import_dirs = import_dirs;

    fs::path rel = sanitized_relative(msg);
    fs::path stem = rel.parent_path() / rel.stem();
    step.out_source = (build_dir / stem).lexically_normal();
    step.out_source += "_m.cc";
    step.out_header = (build_dir / stem).lexically_normal();
    step.out_header += "_m.h";

    step.command.push_back(install.msgc_path.generic_string());
    for (const fs::path& dir : import_dirs) {
        step.command.push_back("-I");
        step.command.push_back(dir.generic_string());
    }
    step.command.push_back(msg.generic_string());
    return step;
}

std::vector<std::string> scan_msg_imports(std::string_view text)
{
    std::vector<std::string> imports;
    bool in_block_comment = false;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
            ? text.substr(pos)
            : text.substr(pos, eol - pos);

        // Strip comments, tracking /* */ state across lines.
        std::string code;
        std::size_t i = 0;
        while (i < line.size()) {
            if (in_block_comment) {
                std::size_t close = line.find("*/", i);
                if (close == std::string_view::npos) {
                    i = line.size();
                } else {
                    in_block_comment = false;
                    i = close + 2;
                }
            } else if (line[i] == '/' && i + 1 < line.size() && line[i + 1] == '/') {
                break;
            } else if (line[i] == '/' && i + 1 < line.size() && line[i + 1] == '*') {
                in_block_comment = true;
                i += 2;
            } else {
                code += line[i];
                ++i;
            }
        }

        std::string_view rest(code);
        while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t' || rest.front() == '\r')) {
            rest.remove_prefix(1);
        }
        if (rest.starts_with("import") && rest.size() > 6
            && (rest[6] == ' ' || rest[6] == '\t')) {
            rest.remove_prefix(6);
            while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) {
                rest.remove_prefix(1);
            }
            std::string name;
            bool valid = !rest.empty() && name_char(rest.front())
                && std::isdigit(static_cast<unsigned char>(rest.front())) == 0;
            while (valid && !rest.empty() && (name_char(rest.front()) || rest.front() == '.')) {
                name += rest.front();
                rest.remove_prefix(1);
            }
            while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) {
                rest.remove_prefix(1);
            }
            if (valid && !name.empty() && name.back() != '.' && name.find("..") == std::string::npos
                && !rest.empty() && rest.front() == ';') {
                if (std::find(imports.begin(), imports.end(), name) == imports.end()) {
                    imports.push_back(name);
                }
            }
        }

        if (eol == std::string_view::npos) {
            break;
        }
        pos = eol + 1;
    }
    return imports;
}

} // namespace oppforge
