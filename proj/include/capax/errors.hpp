#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace capax {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input; `line` is 1-based.
struct ParseError : Error {
    ParseError(int line_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
    int line;
};

// An operation was called outside its stated domain.
struct PreconditionError : Error {
    using Error::Error;
};

// Configuration-space enumeration hit the node limit before a result
// could be established.  No partial result is produced.
struct NodeLimitError : Error {
    NodeLimitError(std::size_t limit_, std::size_t reached_)
        : Error("configuration node limit exceeded: limit " + std::to_string(limit_) +
                ", enumeration aborted at " + std::to_string(reached_) + " nodes"),
          limit(limit_),
          reached(reached_) {}
    std::size_t limit;
    std::size_t reached;
};

// A bounded search ran out of budget without deciding the question.
struct SearchBudgetError : Error {
    using Error::Error;
};

}  // namespace capax
