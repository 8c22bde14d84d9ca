#include "oppforge/version.hpp"

#include "oppforge/error.hpp"

#include <cctype>

namespace oppforge {

namespace {

bool take_int(std::string_view& s, int& out)
{
    if (s.empty() || !std::isdigit(static_cast<unsigned char>(s.front()))) {
        return false;
    }
    long value = 0;
    std::size_t used = 0;
    while (used < s.size() && std::isdigit(static_cast<unsigned char>(s[used]))) {
        value = value * 10 + (s[used] - '0');
        if (value > 1000000) {
            return false;
        }
        ++used;
    }
    out = static_cast<int>(value);
    s.remove_prefix(used);
    return true;
}

} // namespace

VersionId parse_version(std::string_view text)
{
    VersionId v;
    v.raw = std::string(text);

    std::string_view rest = text;
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) {
        rest.remove_prefix(1);
    }
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) {
        rest.remove_suffix(1);
    }
    if (rest.starts_with("omnetpp-")) {
        rest.remove_prefix(8);
    }

    if (!take_int(rest, v.major) || rest.empty() || rest.front() != '.') {
        fail(ErrorKind::InvalidVersion, "cannot parse version from '" + v.raw + "'");
    }
    rest.remove_prefix(1);
    if (!take_int(rest, v.minor)) {
        fail(ErrorKind::InvalidVersion, "cannot parse version from '" + v.raw + "'");
    }

    // Optional patch component; kept only in raw.
    if (rest.starts_with(".")) {
        std::string_view after = rest.substr(1);
        int patch = 0;
        if (take_int(after, patch)) {
            rest = after;
        }
    }

    while (!rest.empty() && (rest.front() == '-' || rest.front() == '.')) {
        rest.remove_prefix(1);
    }
    if (!rest.empty()) {
        std::string tag;
        tag.reserve(rest.size());
        for (char c : rest) {
            tag.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
        v.prerelease = std::move(tag);
    }
    return v;
}

std::string format_version(const VersionId& v)
{
    return v.raw;
}

bool version_gate(const VersionId& v)
{
    if (v.major != 6) {
        return v.major > 6;
    }
    return v.minor >= 0;
}

} // namespace oppforge
