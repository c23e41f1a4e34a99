#pragma once

#include <stdexcept>
#include <string>

namespace zerogap {

// Invalid user-facing input: parameter ranges, labels, malformed flags.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// No admissible point where one was required (gap search, optimizer).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The feasibility boundary lies beyond the κ scan range.
class ScanRangeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The closed-form transcription failed its exact self-check.
class TranscriptionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace zerogap
