#pragma once

#include <stdexcept>
#include <string>

namespace spinfib {

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Index or size beyond a configured cap (max index, grid bound, render bound).
struct LimitError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Internal arithmetic contract broken (e.g. an exact division that was not
/// exact). Never caused by user input; indicates a bug in the kernel.
struct ArithmeticBug : std::logic_error {
    using std::logic_error::logic_error;
};

/// Malformed b-file content. Carries the 1-based line number when known.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what, long line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_number(line) {}
    long line_number;
};

/// Failure to obtain sequence bytes: missing fixture, network error,
/// non-success HTTP status, or a response over the size cap.
struct FetchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A table check could not compare enough terms to mean anything.
struct InsufficientOverlap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Long-running computation stopped via a cancel flag.
struct Cancelled : std::runtime_error {
    Cancelled() : std::runtime_error("operation cancelled") {}
};

} // namespace spinfib
