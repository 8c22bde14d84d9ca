#include "oppforge/project_file.hpp"

#include "oppforge/error.hpp"

#include "doctest.h"

#include "fixture_util.hpp"

#include <algorithm>
#include <functional>

using namespace oppforge;
using testutil::TempDir;
namespace fs = std::filesystem;

namespace {

ErrorKind error_kind(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::IoError;
}

fs::path write_project(const TempDir& tmp, const std::string& json)
{
    fs::path root = tmp.path() / "proj";
    fs::create_directories(root);
    testutil::write_file(root / "oppforge.json", json);
    return root / "oppforge.json";
}

void seed_sources(const fs::path& root)
{
    testutil::write_file(root / "src/a.cc", "// a\n");
    testutil::write_file(root / "src/sub/b.cc", "// b\n");
    testutil::write_file(root / "src/z.cc", "// z\n");
    testutil::write_file(root / "src/m.msg", "message M { int x; }\n");
    testutil::write_file(root / "app/main.cc", "int main() { return 0; }\n");
    testutil::write_file(root / "simulations/omnetpp.ini", "[General]\n");
}

const char* toy_json = R"({
    // A toy project; comments and trailing commas are fine here.
    "mode": "release",
    "build_dir": "build",
    "targets": [
        {
            "name": "model",
            "kind": "library",
            "sources": ["src/**/*.cc", "src/*.msg"],
            "include_dirs": ["src"],
            "ned_folders": ["src"],
        },
        {
            "name": "sim",
            "kind": "executable",
            "sources": ["app/main.cc"],
            "deps": ["model"],
        },
    ],
    "runs": [
        {
            "name": "Demo",
            "target": "model",
            "ini": "simulations/omnetpp.ini",
            "workdir": "simulations",
            "args": ["-u", "Cmdenv"],
        },
    ],
    "ide": {
        "kit_name": "Toy Kit",
        "flavors": ["lldb", "gdb"],
        "env_style": "posix_sh",
    },
})";

} // namespace

TEST_CASE("the project file reads tolerantly and validates strictly")
{
    TempDir tmp;
    fs::path file = write_project(tmp, toy_json);
    seed_sources(file.parent_path());

    ProjectFile project = load_project_file(file);
    CHECK(project.mode == BuildMode::release);
    CHECK(project.build_dir == fs::path("build"));
    REQUIRE(project.targets.size() == 2);
    CHECK(project.targets[0].name == "model");
    CHECK(project.targets[0].kind == TargetKind::opp_model_library);
    CHECK(project.targets[1].kind == TargetKind::executable);
    REQUIRE(project.runs.size() == 1);
    CHECK(project.runs[0].extra_args == std::vector<std::string>{"-u", "Cmdenv"});
    REQUIRE(project.ide.has_value());
    CHECK(project.ide->kit_name == "Toy Kit");
    REQUIRE(project.ide->flavors.size() == 2);
    CHECK(project.ide->env_style == EnvScriptStyle::posix_sh);
}

TEST_CASE("schema violations are rejected with InvalidProjectFile")
{
    TempDir tmp;
    fs::path root = tmp.path() / "proj";
    fs::create_directories(root);
    seed_sources(root);

    auto load_text = [&](const std::string& json) {
        testutil::write_file(root / "oppforge.json", json);
        return load_project_file(root / "oppforge.json");
    };

    CHECK(error_kind([&] { load_text("{\"nonsense\": 1}"); }) == ErrorKind::InvalidProjectFile);
    CHECK(error_kind([&] { load_text("{\"mode\": \"fast\"}"); }) == ErrorKind::InvalidProjectFile);
    CHECK(error_kind([&] { load_text("{\"build_dir\": \"/abs\"}"); }) == ErrorKind::InvalidProjectFile);
    CHECK(error_kind([&] {
              load_text("{\"targets\": [{\"name\": \"x\", \"kind\": \"plugin\"}]}");
          })
          == ErrorKind::InvalidProjectFile);
    CHECK(error_kind([&] {
              load_text("{\"runs\": [{\"name\": \"r\", \"target\": \"x\", \"ini\": \"missing.ini\"}]}");
          })
          == ErrorKind::InvalidProjectFile);
    CHECK(error_kind([&] {
              load_text("{\"imports\": [{\"makefile\": \"nope/Makefile\"}]}");
          })
          == ErrorKind::InvalidProjectFile);
}

TEST_CASE("glob expansion is sorted, recursive, and duplicate-free")
{
    TempDir tmp;
    fs::path root = tmp.path() / "proj";
    seed_sources(root);

    auto matches = expand_glob(root, "src/**/*.cc");
    CHECK(matches == std::vector<fs::path>{"src/a.cc", "src/sub/b.cc", "src/z.cc"});

    matches = expand_glob(root, "src/*.cc");
    CHECK(matches == std::vector<fs::path>{"src/a.cc", "src/z.cc"});

    matches = expand_glob(root, "src/?.cc");
    CHECK(matches == std::vector<fs::path>{"src/a.cc", "src/z.cc"});

    matches = expand_glob(root, "src/*.msg");
    CHECK(matches == std::vector<fs::path>{"src/m.msg"});

    matches = expand_glob(root, "src/**");
    CHECK(matches.size() == 4);

    // literal patterns must name an existing file
    matches = expand_glob(root, "app/main.cc");
    CHECK(matches == std::vector<fs::path>{"app/main.cc"});
    CHECK(error_kind([&] { expand_glob(root, "app/ghost.cc"); }) == ErrorKind::InvalidProjectFile);

    // no matches is fine for a wildcard
    CHECK(expand_glob(root, "elsewhere/*.cc").empty());
}

TEST_CASE("build_graph adds imports before declared targets")
{
    TempDir tmp;
    fs::path file = write_project(tmp, R"({
        "targets": [
            {"name": "model", "kind": "library", "sources": ["src/*.cc", "src/*.msg"],
             "ned_folders": ["src"], "deps": ["mylib"]}
        ],
        "imports": [
            {"makefile": ")" + (fs::path(OPPFORGE_FIXTURE_DIR) / "opp_project/Makefile").generic_string()
                                               + R"(", "root": ")"
                                               + (fs::path(OPPFORGE_FIXTURE_DIR) / "opp_project").generic_string()
                                               + R"("}
        ]
    })");
    seed_sources(file.parent_path());

    ProjectFile project = load_project_file(file);
    TargetGraph graph = build_graph(project, BuildMode::release);
    REQUIRE(graph.size() == 2);
    CHECK(graph.targets()[0].name == "mylib");
    CHECK(graph.targets()[0].kind == TargetKind::imported);
    CHECK(graph.targets()[1].name == "model");
    REQUIRE(graph.targets()[1].cc_sources.size() == 2);
    CHECK(graph.targets()[1].msg_sources == std::vector<fs::path>{"src/m.msg"});

    CHECK(resolve(graph) == std::vector<std::string>{"mylib", "model"});
}

TEST_CASE("run specs collect folders and libraries from the graph")
{
    TempDir tmp;
    fs::path file = write_project(tmp, toy_json);
    fs::path root = file.parent_path();
    seed_sources(root);

    ProjectFile project = load_project_file(file);
    TargetGraph graph = build_graph(project, BuildMode::release);
    RunSpec spec = make_run_spec(project, graph, project.runs[0], BuildMode::release);

    CHECK(spec.name == "Demo");
    CHECK(spec.working_dir == (root / "simulations").generic_string());
    CHECK(spec.ini_file == (root / "simulations/omnetpp.ini").generic_string());
    CHECK(spec.ned_folders == std::vector<std::string>{(root / "src").generic_string()});
    CHECK(spec.libraries
          == std::vector<std::string>{(root / "build/release/libmodel.so").generic_string()});
    CHECK(spec.extra_args == std::vector<std::string>{"-u", "Cmdenv"});

    // debug mode picks the suffixed artifact
    RunSpec debug_spec = make_run_spec(project, graph, project.runs[0], BuildMode::debug);
    CHECK(debug_spec.libraries
          == std::vector<std::string>{(root / "build/debug/libmodel_dbg.so").generic_string()});

    CHECK(error_kind([&] {
              RunDecl ghost;
              ghost.name = "ghost";
              ghost.target = "nope";
              ghost.ini = root / "simulations/omnetpp.ini";
              make_run_spec(project, graph, ghost, BuildMode::release);
          })
          == ErrorKind::UnknownTarget);
}

TEST_CASE("toolchain overrides shadow the install baseline")
{
    TempDir tmp;
    fs::path file = write_project(tmp, R"({
        "toolchain": {"cxx": "clang++", "flags_release": "-O3"}
    })");
    ProjectFile project = load_project_file(file);

    fs::path install_root = tmp.path() / "omnetpp";
    testutil::make_install(install_root);
    OmnetInstall install = discover(install_root, {});

    LowerOptions options = lower_options_for(project, install);
    CHECK(options.cxx == "clang++");
    CHECK(options.flags_release == "-O3");
    CHECK(options.flags_debug == "-g"); // from the fixture Makefile.inc
}
