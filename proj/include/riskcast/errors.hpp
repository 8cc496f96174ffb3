#pragma once

#include <stdexcept>
#include <string>

namespace riskcast {

// Bad or inconsistent input data. CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Two series (or a series and its labels) that must line up do not.
class AlignmentError : public ValidationError {
public:
    explicit AlignmentError(const std::string& msg) : ValidationError(msg) {}
};

// Fewer observations than the metric needs.
class InsufficientDataError : public ValidationError {
public:
    explicit InsufficientDataError(const std::string& msg) : ValidationError(msg) {}
};

// Filesystem or parse-level failure. CLI maps this to exit code 2.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace riskcast
