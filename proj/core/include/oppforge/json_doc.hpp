#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace oppforge {

// Order-preserving JSON tree: read tolerantly, written strictly.
using JsonDoc = nlohmann::ordered_json;

// Strict JSON extended with // line comments, /* */ block comments, and
// trailing commas in objects and arrays; the extensions are discarded from
// the model. Anything else malformed raises ParseError (SyntaxError kind)
// with a 1-based line and column. Duplicate object keys keep the first
// position and the last value.
JsonDoc parse_jsonc(std::string_view text);

// Deterministic strict-JSON writer: insertion order, 4-space indent, LF line
// endings, trailing newline. Equal documents produce byte-identical text.
std::string serialize_json(const JsonDoc& doc);

} // namespace oppforge
