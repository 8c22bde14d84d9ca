#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace oppforge {

// Ordered variable name -> fully expanded value map, as extracted from a
// Makefile. Lookup of an undefined name is an explicit miss, never "".
class VarMap {
public:
    void set(std::string name, std::string value);

    // "+=" semantics: joins with a single space, or plain set when undefined.
    void append(const std::string& name, std::string_view value);

    std::optional<std::string_view> lookup(std::string_view name) const;
    bool contains(std::string_view name) const;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    // "NAME = value" lines in insertion order, LF-terminated.
    std::string dump() const;

    friend bool operator==(const VarMap& a, const VarMap& b) { return a.entries_ == b.entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct MakefileParseOptions {
    // Names whose $(NAME) references stay symbolic in expanded values.
    std::vector<std::string> keep_symbolic;
};

// Makefile variable subset shared by the installation and project readers:
// NAME = value, NAME += value (plus := and ?=), backslash continuations and
// '#' comments, followed by one recursive $(NAME) expansion pass over the
// final assignments. Function-style references such as $(shell ...) and
// references to undefined names are kept verbatim. Recipe lines (tab-led)
// and anything that is not an assignment are skipped.
// Throws CycleDetected when a variable expands through itself.
VarMap parse_makefile_vars(std::string_view text, const MakefileParseOptions& options = {});

} // namespace oppforge
