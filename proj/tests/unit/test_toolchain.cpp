#include "oppforge/toolchain.hpp"

#include "oppforge/error.hpp"

#include "doctest.h"

#include "fixture_util.hpp"

#include <functional>

using namespace oppforge;
using testutil::InstallFixtureOptions;
using testutil::TempDir;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::IoError;
}

} // namespace

TEST_CASE("discover resolves an explicit override root")
{
    TempDir tmp;
    fs::path root = tmp.path() / "omnetpp-6.0pre10";
    testutil::make_install(root);

    OmnetInstall install = discover(root, {});
    CHECK(install.root == fs::absolute(root).lexically_normal());
    CHECK(install.version.major == 6);
    CHECK(install.version.minor == 0);
    REQUIRE(install.version.prerelease.has_value());
    CHECK(*install.version.prerelease == "pre10");
    CHECK(install.bin_dir == install.root / "bin");
    CHECK(install.runner_release == install.bin_dir / "opp_run");
    CHECK(install.runner_debug == install.bin_dir / "opp_run_dbg");
    CHECK(install.msgc_path == install.bin_dir / "opp_msgc");
    REQUIRE(install.lldb_formatter.has_value());
    CHECK(*install.lldb_formatter == install.root / "python/omnetpp/lldb/formatters/omnetpp.py");
    REQUIRE(install.tool_path_entries.size() == 1);
    CHECK(install.tool_path_entries[0] == install.bin_dir);
}

TEST_CASE("discover reports NotFound for an empty override")
{
    TempDir tmp;
    fs::path empty = tmp.path() / "empty";
    fs::create_directories(empty);
    CHECK(kind_of([&] { discover(empty, {}); }) == ErrorKind::NotFound);
    CHECK(kind_of([&] { discover(std::nullopt, {}); }) == ErrorKind::NotFound);
}

TEST_CASE("search path hits walk up from the bin directory")
{
    TempDir tmp;
    fs::path root = tmp.path() / "sim";
    InstallFixtureOptions opt;
    opt.version = "5.6";
    opt.formatter = false;
    testutil::make_install(root, opt);

    OmnetInstall install = discover(std::nullopt, {tmp.path() / "nothing", root / "bin"});
    CHECK(install.root == fs::absolute(root).lexically_normal());
    CHECK(install.version.major == 5);
    CHECK(install.version.minor == 6);
    // the formatter tree is absent in a 5.6 layout
    CHECK_FALSE(install.lldb_formatter.has_value());
}

TEST_CASE("version below the gate never populates the formatter")
{
    TempDir tmp;
    fs::path root = tmp.path() / "sim";
    InstallFixtureOptions opt;
    opt.version = "5.6";
    opt.formatter = true; // tree exists, version gate still closed
    testutil::make_install(root, opt);
    OmnetInstall install = discover(root, {});
    CHECK_FALSE(install.lldb_formatter.has_value());
}

TEST_CASE("prose runner spelling is accepted as a fallback")
{
    TempDir tmp;
    fs::path root = tmp.path() / "sim";
    InstallFixtureOptions opt;
    opt.runner_debug_name = "opp_run_debug";
    testutil::make_install(root, opt);
    OmnetInstall install = discover(root, {});
    CHECK(install.runner_debug.filename() == "opp_run_debug");
}

TEST_CASE("missing components are reported by name")
{
    TempDir tmp;
    fs::path root = tmp.path() / "sim";
    InstallFixtureOptions opt;
    opt.msgc = false;
    testutil::make_install(root, opt);
    try {
        discover(root, {});
        FAIL("expected Incomplete");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Incomplete);
        CHECK(std::string(e.what()).find("opp_msgc") != std::string::npos);
    }

    fs::path root2 = tmp.path() / "sim2";
    InstallFixtureOptions opt2;
    opt2.runner_debug = false;
    testutil::make_install(root2, opt2);
    try {
        discover(root2, {});
        FAIL("expected Incomplete");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Incomplete);
        CHECK(std::string(e.what()).find("opp_run_dbg") != std::string::npos);
    }
}

TEST_CASE("version marker falls back to Makefile.inc")
{
    TempDir tmp;
    fs::path root = tmp.path() / "sim";
    InstallFixtureOptions opt;
    opt.version = "6.1";
    opt.version_file = false;
    opt.version_in_makefile_inc = true;
    opt.formatter = true;
    testutil::make_install(root, opt);
    OmnetInstall install = discover(root, {});
    CHECK(install.version.major == 6);
    CHECK(install.version.minor == 1);
    CHECK(install.version.raw == "6.1");
}

TEST_CASE("missing version marker is Incomplete")
{
    TempDir tmp;
    fs::path root = tmp.path() / "sim";
    InstallFixtureOptions opt;
    opt.version_file = false;
    opt.version_in_makefile_inc = false;
    testutil::make_install(root, opt);
    fs::remove(root / "Makefile.inc");
    CHECK(kind_of([&] { discover(root, {}); }) == ErrorKind::Incomplete);
}

TEST_CASE("windows-style trees contribute the full PATH entry set")
{
    TempDir tmp;
    fs::path root = tmp.path() / "omnetpp-6.0pre10";
    InstallFixtureOptions opt;
    opt.windows_tree = true;
    testutil::make_install(root, opt);
    OmnetInstall install = discover(root, {});
    REQUIRE(install.tool_path_entries.size() == 5);
    CHECK(install.tool_path_entries[0] == install.root / "bin");
    CHECK(install.tool_path_entries[1] == install.root / "tools/win64/usr/local/bin");
    CHECK(install.tool_path_entries[2] == install.root / "tools/win64/usr/bin");
    CHECK(install.tool_path_entries[3] == install.root / "tools/win64/mingw64/bin");
    CHECK(install.tool_path_entries[4] == install.root / "tools/win64/mingw64/opt/bin");
}

TEST_CASE("discover is deterministic for identical fixtures")
{
    TempDir tmp;
    fs::path root = tmp.path() / "sim";
    testutil::make_install(root);
    OmnetInstall a = discover(root, {});
    OmnetInstall b = discover(root, {});
    CHECK(a == b);

    OmnetInstall c = discover(std::nullopt, {root / "bin"});
    CHECK(a == c);
}
