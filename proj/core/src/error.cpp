#include "oppforge/error.hpp"

namespace oppforge {

const char* kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::Incomplete: return "Incomplete";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::MissingVariable: return "MissingVariable";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::InvalidVersion: return "InvalidVersion";
    case ErrorKind::DuplicateTarget: return "DuplicateTarget";
    case ErrorKind::UnsupportedSource: return "UnsupportedSource";
    case ErrorKind::InvalidTarget: return "InvalidTarget";
    case ErrorKind::UnknownTarget: return "UnknownTarget";
    case ErrorKind::NotAMsgFile: return "NotAMsgFile";
    case ErrorKind::MissingInstallTool: return "MissingInstallTool";
    case ErrorKind::DuplicateOutput: return "DuplicateOutput";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::MalformedLaunchFile: return "MalformedLaunchFile";
    case ErrorKind::MalformedKitsFile: return "MalformedKitsFile";
    case ErrorKind::EmptyNedSet: return "EmptyNedSet";
    case ErrorKind::FlavorUnavailable: return "FlavorUnavailable";
    case ErrorKind::UnknownRunName: return "UnknownRunName";
    case ErrorKind::VariantUnavailable: return "VariantUnavailable";
    case ErrorKind::InvalidProjectFile: return "InvalidProjectFile";
    case ErrorKind::IoError: return "IoError";
    }
    return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind)
{
}

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(ErrorKind::SyntaxError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column)
{
}

void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

} // namespace oppforge
