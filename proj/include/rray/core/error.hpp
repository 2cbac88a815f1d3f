#pragma once

#include <stdexcept>
#include <string>

namespace rray {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric failures (CLI exit code 2).
class NumericError : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public NumericError {
public:
    using NumericError::NumericError;
};

class SingularJacobian : public NumericError {
public:
    using NumericError::NumericError;
};

class DegenerateBasis : public NumericError {
public:
    using NumericError::NumericError;
};

// Configuration failures (CLI exit code 1).
class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class ValidationError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Filesystem failures (CLI exit code 3).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace rray
