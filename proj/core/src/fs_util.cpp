#include "oppforge/fs_util.hpp"

#include "oppforge/error.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

namespace oppforge {

fs::path join_normal(const fs::path& base, const fs::path& p)
{
    fs::path joined = (p.is_absolute() ? p : base / p).lexically_normal();
    // "a/b/." normalizes to "a/b/"; drop the dangling separator
    if (joined.filename().empty() && !joined.parent_path().empty() && joined.has_relative_path()) {
        joined = joined.parent_path();
    }
    return joined;
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::IoError, "cannot read " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        fail(ErrorKind::IoError, "read failed for " + path.string());
    }
    return std::move(buffer).str();
}

void write_file_atomic(const fs::path& path, std::string_view content)
{
    std::error_code ec;
    fs::path parent = path.parent_path();
    if (!parent.empty()) {
        fs::create_directories(parent, ec);
        if (ec) {
            fail(ErrorKind::IoError, "cannot create directory " + parent.string() + ": " + ec.message());
        }
    }

    static thread_local std::mt19937_64 rng{std::random_device{}()};
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(rng() & 0xffffff);

    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail(ErrorKind::IoError, "cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            fail(ErrorKind::IoError, "write failed for " + tmp.string());
        }
    }

    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        fail(ErrorKind::IoError, "cannot replace " + path.string() + ": " + ec.message());
    }
}

} // namespace oppforge
