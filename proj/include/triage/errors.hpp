#pragma once

#include <stdexcept>
#include <string>

namespace triage {

// Raised by parse_alert and the corpus loaders.
class ParseError : public std::runtime_error {
public:
    enum class Code {
        MalformedDocument,
        SchemaViolation,
        TimestampMismatch,
    };

    ParseError(Code code, std::string field, const std::string& message)
        : std::runtime_error(message), code_(code), field_(std::move(field)) {}

    Code code() const { return code_; }
    const std::string& field() const { return field_; }

private:
    Code code_;
    std::string field_;
};

// Raised by the tool fabric. Data-level misses never raise; these cover
// malformed arguments and lookups of sessions that do not exist.
class ToolError : public std::runtime_error {
public:
    enum class Code {
        ArgumentSchemaViolation,
        InvalidWindow,
        UnknownSession,
    };

    ToolError(Code code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Code code() const { return code_; }

private:
    Code code_;
};

class EvalError : public std::runtime_error {
public:
    enum class Code {
        IdMismatch,
        EmptyInput,
    };

    EvalError(Code code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Code code() const { return code_; }

private:
    Code code_;
};

// Synthesizing from zero workflow reports is a programming error: the
// router guarantees at least the Generic workflow runs.
class EmptyReportsError : public std::logic_error {
public:
    explicit EmptyReportsError(const std::string& message) : std::logic_error(message) {}
};

class IoError : public std::runtime_error {
public:
    IoError(std::string path, const std::string& message)
        : std::runtime_error(message), path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace triage
