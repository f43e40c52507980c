#pragma once

#include <stdexcept>
#include <string>

namespace besselstop {

/// Base for numeric failures (non-convergence, accuracy loss). Argument
/// errors use std::invalid_argument / std::out_of_range directly.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RootError : public NumericError {
public:
    using NumericError::NumericError;
};

class AccuracyError : public NumericError {
public:
    using NumericError::NumericError;
};

class RangeError : public NumericError {
public:
    using NumericError::NumericError;
};

class SchemeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace besselstop
