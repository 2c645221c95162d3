#pragma once

#include <stdexcept>
#include <string>

namespace logiplan {

enum class ErrorKind {
    syntax,
    unknown_predicate,
    instantiation,
    type,
    budget,
    unknown_table,
    unknown_field,
    domain,
    schema,
    io,
    manifest,
    envelope,
    provider,
    no_matching_rule,
    execution,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::unknown_predicate: return "unknown_predicate";
    case ErrorKind::instantiation: return "instantiation";
    case ErrorKind::type: return "type";
    case ErrorKind::budget: return "budget";
    case ErrorKind::unknown_table: return "unknown_table";
    case ErrorKind::unknown_field: return "unknown_field";
    case ErrorKind::domain: return "domain";
    case ErrorKind::schema: return "schema";
    case ErrorKind::io: return "io";
    case ErrorKind::manifest: return "manifest";
    case ErrorKind::envelope: return "envelope";
    case ErrorKind::provider: return "provider";
    case ErrorKind::no_matching_rule: return "no_matching_rule";
    case ErrorKind::execution: return "execution";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(to_string(kind)) + " error: " + message),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Syntax error with a source position (1-based line/column, 0-based byte offset).
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::size_t offset, const std::string& message)
        : Error(ErrorKind::syntax,
                "line " + std::to_string(line) + ", column " + std::to_string(column) +
                    " (offset " + std::to_string(offset) + "): " + message),
          line_(line), column_(column), offset_(offset) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    std::size_t offset() const { return offset_; }

private:
    std::size_t line_, column_, offset_;
};

/// Thrown by halt/0; carries the requested process exit code.
struct Halt {
    int code = 0;
};

}  // namespace logiplan
