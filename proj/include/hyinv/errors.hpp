#pragma once

#include <stdexcept>
#include <string>

namespace hyinv {

// Base class for all errors raised by the library. Every error names the
// failing stage so the CLI can report it without a backtrace.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (polynomial grammar, model files, matrix files).
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = -1, int column = -1)
        : Error(format(what, line, column)), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& what, int line, int column) {
        if (line < 0) return "parse error: " + what;
        return "parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what;
    }
    int line_;
    int column_;
};

// Structurally valid input that violates a model-level constraint.
class SemanticError : public Error {
public:
    explicit SemanticError(const std::string& what) : Error("semantic error: " + what) {}
};

// Arithmetic in incompatible number fields.
class FieldMismatch : public Error {
public:
    explicit FieldMismatch(const std::string& what) : Error("field mismatch: " + what) {}
};

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& what) : Error("division by zero: " + what) {}
};

// A configured resource budget (degree cap, splitting-field cap, Groebner
// step budget, fixpoint iteration cap) was exhausted.
class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& what) : Error("cap exceeded: " + what) {}
};

// Violation of an internal soundness certificate. Indicates a bug, not bad
// input; callers should not catch this routinely.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error("internal error: " + what) {}
};

} // namespace hyinv
