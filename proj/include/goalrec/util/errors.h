#pragma once

#include <stdexcept>
#include <string>

namespace goalrec {

// Malformed input text (PDDL, observation or hypothesis files).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &message, int line = 0, int column = 0)
        : std::runtime_error(format(message, line, column)),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string &message, int line, int column) {
        if (line <= 0)
            return message;
        std::string where = "line " + std::to_string(line);
        if (column > 0)
            where += ", column " + std::to_string(column);
        return where + ": " + message;
    }

    int line_;
    int column_;
};

// Well-formed PDDL that uses a construct outside the STRIPS subset.
class UnsupportedFeature : public ParseError {
public:
    explicit UnsupportedFeature(const std::string &construct, int line = 0, int column = 0)
        : ParseError("unsupported PDDL feature: " + construct, line, column),
          construct_(construct) {}

    const std::string &construct() const { return construct_; }

private:
    std::string construct_;
};

class GroundingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The LP solver gave up (iteration limit, numerical breakdown). Never used
// to signal infeasibility.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BackendUnavailable : public std::runtime_error {
public:
    explicit BackendUnavailable(const std::string &name)
        : std::runtime_error("LP backend not registered: " + name) {}
};

}  // namespace goalrec
