#include "oppforge/varmap.hpp"

#include "oppforge/error.hpp"
#include "oppforge/toolchain.hpp"

#include "doctest.h"

#include "fixture_util.hpp"

#include <random>

using namespace oppforge;

namespace {

std::string value_of(const VarMap& map, const char* name)
{
    auto value = map.lookup(name);
    REQUIRE(value.has_value());
    return std::string(*value);
}

} // namespace

TEST_CASE("assignments expand references to later definitions")
{
    VarMap map = parse_makefile_vars("A = 1\nB = $(A)/x");
    CHECK(value_of(map, "A") == "1");
    CHECK(value_of(map, "B") == "1/x");

    // same result regardless of definition order
    map = parse_makefile_vars("B = $(A)/x\nA = 1");
    CHECK(value_of(map, "B") == "1/x");
}

TEST_CASE("self-referential expansion is a cycle")
{
    CHECK_THROWS_AS(parse_makefile_vars("A = $(B)\nB = $(A)"), Error);
    try {
        parse_makefile_vars("A = $(B)\nB = $(A)");
        FAIL("expected CycleDetected");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CycleDetected);
    }
    CHECK_THROWS_AS(parse_makefile_vars("A = x$(A)"), Error);
}

TEST_CASE("later assignments override, += appends with one space")
{
    VarMap map = parse_makefile_vars("A = 1\nA = 2\nB = x\nB += y z\nC += solo");
    CHECK(value_of(map, "A") == "2");
    CHECK(value_of(map, "B") == "x y z");
    CHECK(value_of(map, "C") == "solo");
}

TEST_CASE("backslash continuations join with a single space")
{
    VarMap map = parse_makefile_vars("LIBS = -la \\\n    -lb");
    CHECK(value_of(map, "LIBS") == "-la -lb");

    map = parse_makefile_vars("X = a\\\nb\\\nc");
    CHECK(value_of(map, "X") == "a b c");
}

TEST_CASE("comments and recipes are ignored")
{
    VarMap map = parse_makefile_vars("# header\nA = 1 # trailing\n\tRECIPE=not-a-var\nall: dep\n");
    CHECK(map.size() == 1);
    CHECK(value_of(map, "A") == "1");
}

TEST_CASE(":= behaves like = and ?= only sets when undefined")
{
    VarMap map = parse_makefile_vars("A := 1\nA ?= 2\nB ?= 3");
    CHECK(value_of(map, "A") == "1");
    CHECK(value_of(map, "B") == "3");
}

TEST_CASE("undefined and function-style references stay verbatim")
{
    VarMap map = parse_makefile_vars("A = $(UNDEFINED)/x\nB = $(shell date)\nC = $(A:%.cc=%.o)");
    CHECK(value_of(map, "A") == "$(UNDEFINED)/x");
    CHECK(value_of(map, "B") == "$(shell date)");
    CHECK(value_of(map, "C") == "$(A:%.cc=%.o)");
}

TEST_CASE("lookup of an undefined name is an explicit miss")
{
    VarMap map = parse_makefile_vars("A = 1");
    CHECK_FALSE(map.lookup("NOPE").has_value());
    CHECK(map.contains("A"));
    CHECK_FALSE(map.contains("NOPE"));
}

TEST_CASE("keep_symbolic leaves the placeholder unexpanded")
{
    MakefileParseOptions options;
    options.keep_symbolic = {"D"};
    VarMap map = parse_makefile_vars("D = _dbg\nTARGET = mylib$(D)", options);
    CHECK(value_of(map, "TARGET") == "mylib$(D)");
    CHECK(value_of(map, "D") == "_dbg");
}

TEST_CASE("installation Makefile.inc fixture expands as written")
{
    // Expected values hand-expanded from tests/fixtures/Makefile.inc.
    std::string text = testutil::read_file(std::string(OPPFORGE_FIXTURE_DIR) + "/Makefile.inc");
    VarMap map = parse_makefile_inc(text);
    CHECK(value_of(map, "OMNETPP_INCL_DIR") == "/opt/omnetpp-6.0pre10/include");
    CHECK(value_of(map, "OMNETPP_LIB_DIR") == "/opt/omnetpp-6.0pre10/lib");
    CHECK(value_of(map, "MSGC") == "/opt/omnetpp-6.0pre10/bin/opp_msgc");
    CHECK(value_of(map, "SHLIB_LD") == "g++ -shared -fPIC");
    CHECK(value_of(map, "USERIF_LIBS") == "-loppqtenv$(D) -loppcmdenv$(D)");
    CHECK(value_of(map, "OMNETPP_VERSION") == "6.0pre10");
}

TEST_CASE("dump round-trips expanded maps")
{
    std::mt19937 rng(20260810);
    for (int round = 0; round < 50; ++round) {
        std::string text;
        int vars = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < vars; ++i) {
            text += "V" + std::to_string(i) + " = value" + std::to_string(rng() % 100);
            if (i > 0 && rng() % 2 == 0) {
                text += " $(V" + std::to_string(rng() % i) + ")";
            }
            text += "\n";
        }
        VarMap first = parse_makefile_vars(text);
        VarMap second = parse_makefile_vars(first.dump());
        CHECK(first == second);
    }
}

TEST_CASE("parsing is total over arbitrary bytes")
{
    std::mt19937 rng(987654);
    for (int round = 0; round < 200; ++round) {
        std::string text;
        int length = static_cast<int>(rng() % 300);
        for (int i = 0; i < length; ++i) {
            // bias toward characters the grammar cares about
            const char alphabet[] = "AB=+?:$()\\\n\t #abc0123";
            text += alphabet[rng() % (sizeof alphabet - 1)];
        }
        try {
            VarMap map = parse_makefile_vars(text);
            (void)map;
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::CycleDetected);
        }
    }
}
