#pragma once

#include <stdexcept>
#include <string>

namespace oppforge {

enum class ErrorKind {
    NotFound,
    Incomplete,
    CycleDetected,
    MissingVariable,
    UnknownKind,
    InvalidVersion,
    DuplicateTarget,
    UnsupportedSource,
    InvalidTarget,
    UnknownTarget,
    NotAMsgFile,
    MissingInstallTool,
    DuplicateOutput,
    SyntaxError,
    MalformedLaunchFile,
    MalformedKitsFile,
    EmptyNedSet,
    FlavorUnavailable,
    UnknownRunName,
    VariantUnavailable,
    InvalidProjectFile,
    IoError,
};

const char* kind_name(ErrorKind kind);

// Domain error carrying a machine-checkable kind next to the human message.
// what() is "<KindName>: <message>".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Syntax failure with a 1-based source position, thrown by the JSONC reader.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

} // namespace oppforge
