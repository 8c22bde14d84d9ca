#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace oppforge {

// Parsed installation version marker: "<major>.<minor>[.<patch>][tag]",
// optionally prefixed with "omnetpp-". Example: "6.0pre10".
struct VersionId {
    int major = 0;
    int minor = 0;
    std::optional<std::string> prerelease;
    std::string raw;

    friend bool operator==(const VersionId&, const VersionId&) = default;
};

// Throws InvalidVersion if text does not start with "<major>.<minor>".
VersionId parse_version(std::string_view text);

// Round-trips the original spelling.
std::string format_version(const VersionId& v);

// True for 6.0 and anything newer; prereleases of 6.0 count as 6.0.
bool version_gate(const VersionId& v);

} // namespace oppforge
