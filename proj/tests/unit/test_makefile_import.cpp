#include "oppforge/makefile_import.hpp"

#include "oppforge/error.hpp"

#include "doctest.h"

#include "fixture_util.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace oppforge;
using testutil::TempDir;
namespace fs = std::filesystem;

namespace {

const fs::path fixture_root = fs::path(OPPFORGE_FIXTURE_DIR) / "opp_project";

VarMap fixture_vars()
{
    return parse_opp_makefile(testutil::read_file(fixture_root / "Makefile"));
}

} // namespace

TEST_CASE("parse_opp_makefile keeps the mode placeholder symbolic")
{
    VarMap map = parse_opp_makefile("TARGET = mylib$(D)\nTARGET_DIR = out/gcc");
    CHECK(map.lookup("TARGET") == "mylib$(D)");
    CHECK(map.lookup("TARGET_DIR") == "out/gcc");

    CHECK(parse_opp_makefile("").empty());

    map = parse_opp_makefile("LIBS = -la \\\n -lb");
    CHECK(map.lookup("LIBS") == "-la -lb");
}

TEST_CASE("fixture Makefile parses to the expected manifest")
{
    // Expected fields written by hand from tests/fixtures/opp_project/Makefile.
    const fs::path root = fs::absolute(fixture_root).lexically_normal();
    const fs::path inet_src = (root.parent_path() / "inet/src").lexically_normal();

    ProjectManifest manifest = manifest_from_vars(fixture_vars(), fixture_root, BuildMode::release);
    CHECK(manifest.name == "mylib");
    CHECK(manifest.kind == ManifestKind::shared_library);
    CHECK(manifest.output_artifact == fs::path("out/gcc-release/libmylib.so"));
    CHECK(manifest.project_root == root);
    REQUIRE(manifest.include_dirs.size() == 3);
    CHECK(manifest.include_dirs[0] == root.generic_string());
    CHECK(manifest.include_dirs[1] == (root / "src").generic_string());
    CHECK(manifest.include_dirs[2] == inet_src.generic_string());
    REQUIRE(manifest.link_libs.size() == 3);
    CHECK(manifest.link_libs[0] == inet_src.generic_string());
    CHECK(manifest.link_libs[1] == "INET");
    CHECK(manifest.link_libs[2] == "pthread");
    CHECK(manifest.defines == std::vector<std::string>{"MYLIB_EXPORT", "WITH_INET"});
    REQUIRE(manifest.ned_folders.size() == 1);
    CHECK(manifest.ned_folders[0] == root / "src");
}

TEST_CASE("debug mode only changes the name and the artifact")
{
    ProjectManifest release = manifest_from_vars(fixture_vars(), fixture_root, BuildMode::release);
    ProjectManifest debug = manifest_from_vars(fixture_vars(), fixture_root, BuildMode::debug);

    CHECK(debug.name == "mylib_dbg");
    CHECK(debug.output_artifact == fs::path("out/gcc-release/libmylib_dbg.so"));

    ProjectManifest normalized = debug;
    normalized.name = release.name;
    normalized.output_artifact = release.output_artifact;
    CHECK(normalized == release);
}

TEST_CASE("missing TARGET is MissingVariable")
{
    VarMap map = parse_opp_makefile("MAKEMAKE_OPTIONS := --make-so -o x");
    try {
        manifest_from_vars(map, ".", BuildMode::release);
        FAIL("expected MissingVariable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingVariable);
    }
}

TEST_CASE("kind detection follows the recorded generator flags")
{
    auto kind_for = [](const char* options_line) {
        std::string text = std::string("TARGET = t$(D)\n") + options_line + "\n";
        return manifest_from_vars(parse_opp_makefile(text), ".", BuildMode::release).kind;
    };
    CHECK(kind_for("MAKEMAKE_OPTIONS := -f --deep --make-so -o t") == ManifestKind::shared_library);
    CHECK(kind_for("MAKEMAKE_OPTIONS := -f --deep --make-lib -o t") == ManifestKind::static_library);
    CHECK(kind_for("MAKEMAKE_OPTIONS := -f --deep -o t") == ManifestKind::executable);

    auto kind_error = [](const std::string& text) {
        try {
            manifest_from_vars(parse_opp_makefile(text), ".", BuildMode::release);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::IoError;
    };
    // absent, contradictory, and recursive layouts are all rejected
    CHECK(kind_error("TARGET = t\n") == ErrorKind::UnknownKind);
    CHECK(kind_error("TARGET = t\nMAKEMAKE_OPTIONS := --make-so --make-lib\n") == ErrorKind::UnknownKind);
    CHECK(kind_error("TARGET = t\nMAKEMAKE_OPTIONS := -r --deep\n") == ErrorKind::UnknownKind);
    CHECK(kind_error("TARGET = t\nMAKEMAKE_OPTIONS := --recurse\n") == ErrorKind::UnknownKind);
}

TEST_CASE("executable artifacts carry no library naming convention")
{
    VarMap map = parse_opp_makefile("TARGET = sim$(D)$(EXE_SUFFIX)\nTARGET_DIR = bin\n"
                                    "MAKEMAKE_OPTIONS := -f --deep -o sim\n");
    ProjectManifest manifest = manifest_from_vars(map, ".", BuildMode::release);
    CHECK(manifest.kind == ManifestKind::executable);
    CHECK(manifest.name == "sim");
    CHECK(manifest.output_artifact == fs::path("bin/sim"));

    manifest = manifest_from_vars(map, ".", BuildMode::debug);
    CHECK(manifest.output_artifact == fs::path("bin/sim_dbg"));
}

TEST_CASE("read_nedfolders resolves entries and skips noise")
{
    TempDir tmp;
    fs::path root = tmp.path();

    SUBCASE("file with entries")
    {
        testutil::write_file(root / ".nedfolders", "src\nexamples\n");
        auto folders = read_nedfolders(root);
        REQUIRE(folders.size() == 2);
        CHECK(folders[0] == root / "src");
        CHECK(folders[1] == root / "examples");
    }
    SUBCASE("missing file falls back to the root")
    {
        auto folders = read_nedfolders(root);
        REQUIRE(folders.size() == 1);
        CHECK(folders[0] == root.lexically_normal());
    }
    SUBCASE("blank lines and comments are skipped")
    {
        testutil::write_file(root / ".nedfolders", "\n# builds\nsrc\n\n# done\n");
        auto folders = read_nedfolders(root);
        REQUIRE(folders.size() == 1);
        CHECK(folders[0] == root / "src");
    }
}

TEST_CASE("manifest is insensitive to the order of independent assignments")
{
    const std::vector<std::string> lines = {
        "TARGET_DIR = out/gcc-release",
        "TARGET_NAME = $(LIB_PREFIX)mylib$(D)",
        "TARGET = $(TARGET_NAME)$(SHARED_LIB_SUFFIX)",
        "D = _dbg",
        "INCLUDE_PATH = -I. -Isrc -I$(INET_PROJ)/src",
        "LIBS = -L$(INET_PROJ)/src -lINET -lpthread",
        "DEFINES = -DMYLIB_EXPORT -DWITH_INET",
        "INET_PROJ = ../inet",
        "MAKEMAKE_OPTIONS := -f --deep --make-so -o mylib",
    };

    auto manifest_for = [&](const std::vector<std::string>& permuted) {
        std::string text;
        for (const std::string& line : permuted) {
            text += line + "\n";
        }
        return manifest_from_vars(parse_opp_makefile(text), fixture_root, BuildMode::release);
    };

    ProjectManifest reference = manifest_for(lines);
    std::mt19937 rng(20260810);
    std::vector<std::string> permuted = lines;
    for (int round = 0; round < 30; ++round) {
        std::shuffle(permuted.begin(), permuted.end(), rng);
        CHECK(manifest_for(permuted) == reference);
    }
}
