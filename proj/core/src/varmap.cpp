#include "oppforge/varmap.hpp"

#include "oppforge/error.hpp"

#include <algorithm>

namespace oppforge {

namespace {

std::string_view ltrim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    return s;
}

std::string_view rtrim(std::string_view s)
{
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

// Physical lines joined on trailing backslashes; the break collapses to one space.
std::vector<std::string> logical_lines(std::string_view text)
{
    std::vector<std::string> lines;
    std::string current;
    bool joining = false;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view physical = (eol == std::string_view::npos)
            ? text.substr(pos)
            : text.substr(pos, eol - pos);
        if (!physical.empty() && physical.back() == '\r') {
            physical.remove_suffix(1);
        }

        bool continued = !physical.empty() && physical.back() == '\\';
        if (continued) {
            physical.remove_suffix(1);
        }

        if (joining) {
            std::string_view piece = ltrim(rtrim(physical));
            current += ' ';
            current += piece;
        } else {
            current = std::string(continued ? rtrim(physical) : physical);
        }
        joining = continued;

        if (!joining) {
            lines.push_back(std::move(current));
            current.clear();
        }

        if (eol == std::string_view::npos) {
            break;
        }
        pos = eol + 1;
    }
    if (joining) {
        lines.push_back(std::move(current));
    }
    return lines;
}

bool is_simple_name(std::string_view name)
{
    if (name.empty()) {
        return false;
    }
    return name.find_first_of(" \t$():#=") == std::string_view::npos;
}

struct RawEntry {
    std::string name;
    std::string value;
};

class Expander {
public:
    Expander(const std::vector<RawEntry>& entries, const MakefileParseOptions& options)
        : options_(options)
    {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            raw_index_.emplace(entries[i].name, i);
        }
        entries_ = &entries;
    }

    std::string expand_name(const std::string& name)
    {
        auto memo = memo_.find(name);
        if (memo != memo_.end()) {
            return memo->second;
        }
        if (std::find(chain_.begin(), chain_.end(), name) != chain_.end()) {
            std::string path;
            for (const auto& link : chain_) {
                path += link;
                path += " -> ";
            }
            path += name;
            fail(ErrorKind::CycleDetected, "variable '" + name + "' expands through itself (" + path + ")");
        }
        chain_.push_back(name);
        std::string result = expand_text((*entries_)[raw_index_.at(name)].value);
        chain_.pop_back();
        memo_.emplace(name, result);
        return result;
    }

    std::string expand_text(std::string_view text)
    {
        std::string out;
        out.reserve(text.size());
        std::size_t i = 0;
        while (i < text.size()) {
            if (text[i] == '$' && i + 1 < text.size() && text[i + 1] == '(') {
                std::size_t depth = 1;
                std::size_t j = i + 2;
                while (j < text.size() && depth > 0) {
                    if (text[j] == '(') {
                        ++depth;
                    } else if (text[j] == ')') {
                        --depth;
                    }
                    ++j;
                }
                if (depth != 0) {
                    // Unterminated reference: keep the rest verbatim.
                    out += text.substr(i);
                    break;
                }
                std::string_view inner = text.substr(i + 2, j - i - 3);
                std::string inner_name(inner);
                bool symbolic = std::find(options_.keep_symbolic.begin(), options_.keep_symbolic.end(),
                                          inner_name) != options_.keep_symbolic.end();
                if (is_simple_name(inner) && !symbolic && raw_index_.count(inner_name) != 0) {
                    out += expand_name(inner_name);
                } else {
                    out += text.substr(i, j - i);
                }
                i = j;
            } else {
                out += text[i];
                ++i;
            }
        }
        return out;
    }

private:
    const std::vector<RawEntry>* entries_ = nullptr;
    const MakefileParseOptions& options_;
    std::unordered_map<std::string, std::size_t> raw_index_;
    std::unordered_map<std::string, std::string> memo_;
    std::vector<std::string> chain_;
};

} // namespace

void VarMap::set(std::string name, std::string value)
{
    auto it = index_.find(name);
    if (it != index_.end()) {
        entries_[it->second].second = std::move(value);
        return;
    }
    index_.emplace(name, entries_.size());
    entries_.emplace_back(std::move(name), std::move(value));
}

void VarMap::append(const std::string& name, std::string_view value)
{
    auto it = index_.find(name);
    if (it == index_.end()) {
        set(name, std::string(value));
        return;
    }
    std::string& existing = entries_[it->second].second;
    if (existing.empty()) {
        existing = std::string(value);
    } else if (!value.empty()) {
        existing += ' ';
        existing += value;
    }
}

std::optional<std::string_view> VarMap::lookup(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return std::string_view(entries_[it->second].second);
}

bool VarMap::contains(std::string_view name) const
{
    return index_.count(std::string(name)) != 0;
}

std::string VarMap::dump() const
{
    std::string out;
    for (const auto& [name, value] : entries_) {
        out += name;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

VarMap parse_makefile_vars(std::string_view text, const MakefileParseOptions& options)
{
    std::vector<RawEntry> raw;
    std::unordered_map<std::string, std::size_t> raw_index;

    auto assign = [&](std::string name, std::string value) {
        auto it = raw_index.find(name);
        if (it != raw_index.end()) {
            raw[it->second].value = std::move(value);
        } else {
            raw_index.emplace(name, raw.size());
            raw.push_back({std::move(name), std::move(value)});
        }
    };

    for (const std::string& logical : logical_lines(text)) {
        if (!logical.empty() && logical.front() == '\t') {
            continue; // recipe line
        }
        std::string_view line = logical;
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = ltrim(rtrim(line));
        if (line.empty()) {
            continue;
        }
        if (line.starts_with("export ")) {
            line = ltrim(line.substr(7));
        } else if (line.starts_with("override ")) {
            line = ltrim(line.substr(9));
        }

        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            continue;
        }
        char modifier = eq > 0 ? line[eq - 1] : '\0';
        std::size_t name_end = eq;
        if (modifier == '+' || modifier == ':' || modifier == '?') {
            name_end = eq - 1;
        } else {
            modifier = '\0';
        }

        std::string_view name = rtrim(line.substr(0, name_end));
        if (!is_simple_name(name)) {
            continue;
        }
        std::string value(ltrim(line.substr(eq + 1)));
        std::string key(name);

        if (modifier == '+') {
            auto it = raw_index.find(key);
            if (it == raw_index.end()) {
                assign(std::move(key), std::move(value));
            } else {
                std::string& existing = raw[it->second].value;
                if (existing.empty()) {
                    existing = std::move(value);
                } else if (!value.empty()) {
                    existing += ' ';
                    existing += value;
                }
            }
        } else if (modifier == '?') {
            if (raw_index.count(key) == 0) {
                assign(std::move(key), std::move(value));
            }
        } else {
            assign(std::move(key), std::move(value));
        }
    }

    Expander expander(raw, options);
    VarMap result;
    for (const RawEntry& entry : raw) {
        result.set(entry.name, expander.expand_name(entry.name));
    }
    return result;
}

} // namespace oppforge
