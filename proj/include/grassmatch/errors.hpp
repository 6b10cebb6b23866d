#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grassmatch {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SizeMismatch : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

class NonFinite : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class ZeroNorm : public Error {
public:
    using Error::Error;
};

class Singular : public Error {
public:
    using Error::Error;
};

class BadCondition : public Error {
public:
    using Error::Error;
};

// Cloud-file parsing failure; line is 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class EmptyFile : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace grassmatch
