#include "oppforge/version.hpp"

#include "oppforge/error.hpp"

#include "doctest.h"

#include <algorithm>
#include <vector>

using namespace oppforge;

TEST_CASE("parse_version handles release and prerelease spellings")
{
    VersionId v = parse_version("6.0pre10");
    CHECK(v.major == 6);
    CHECK(v.minor == 0);
    REQUIRE(v.prerelease.has_value());
    CHECK(*v.prerelease == "pre10");
    CHECK(format_version(v) == "6.0pre10");

    v = parse_version("5.6");
    CHECK(v.major == 5);
    CHECK(v.minor == 6);
    CHECK_FALSE(v.prerelease.has_value());

    v = parse_version("omnetpp-6.0.1");
    CHECK(v.major == 6);
    CHECK(v.minor == 0);
    CHECK_FALSE(v.prerelease.has_value());
    CHECK(format_version(v) == "omnetpp-6.0.1");

    v = parse_version("7.1");
    CHECK(v.major == 7);
    CHECK(v.minor == 1);

    v = parse_version("6.1-rc1");
    REQUIRE(v.prerelease.has_value());
    CHECK(*v.prerelease == "rc1");
}

TEST_CASE("parse_version rejects garbage")
{
    for (const char* bad : {"", "abc", "6", "6.", ".0", "v6.0"}) {
        CHECK_THROWS_AS(parse_version(bad), Error);
    }
    try {
        parse_version("abc");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidVersion);
    }
}

TEST_CASE("version raw spelling round-trips")
{
    for (const char* raw : {"6.0pre10", "5.6", "omnetpp-6.0.1", "6.1-rc1", "10.20"}) {
        CHECK(format_version(parse_version(raw)) == raw);
    }
}

TEST_CASE("version_gate opens at 6.0 including prereleases")
{
    CHECK(version_gate(parse_version("6.0pre10")));
    CHECK_FALSE(version_gate(parse_version("5.6")));
    CHECK(version_gate(parse_version("7.1")));
    CHECK(version_gate(parse_version("6.0")));
    CHECK_FALSE(version_gate(parse_version("5.7.2")));
}

TEST_CASE("version_gate is monotone over an ordered fixture set")
{
    const std::vector<const char*> ordered = {"3.3", "4.6", "5.0", "5.6.2", "5.7",
                                              "6.0pre8", "6.0pre10", "6.0", "6.0.1",
                                              "6.1", "7.0"};
    bool gate_seen = false;
    for (const char* raw : ordered) {
        bool gate = version_gate(parse_version(raw));
        if (gate_seen) {
            CHECK(gate); // once open, never closes again for higher versions
        }
        gate_seen = gate_seen || gate;
    }
    CHECK(gate_seen);
}
