#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace citeforensics {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// File could not be opened, read, or written.
class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(message) {}
};

/// A line of an input file could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what),
          path_(path),
          line_(line) {}

    const std::string& path() const { return path_; }
    std::size_t line() const { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

/// Structural invariants of a corpus (or graph) are violated. Carries the
/// full list of issues so callers can report them all at once.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "corpus validation failed:";
        for (const auto& i : issues) {
            out += "\n  - " + i;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

/// An id (author, paper, seed) was not found where the caller required it.
class LookupError : public Error {
public:
    explicit LookupError(const std::string& message) : Error(message) {}
};

/// A caller-supplied argument violates an operation precondition.
class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& message) : Error(message) {}
};

/// A metric cannot be computed from the available data (missing page counts,
/// empty inputs, all-zero histories). Distinct from silent defaults on purpose.
class NotComputableError : public Error {
public:
    explicit NotComputableError(const std::string& message) : Error(message) {}
};

}  // namespace citeforensics
