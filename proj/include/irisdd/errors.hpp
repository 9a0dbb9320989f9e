#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace irisdd {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Vector lengths disagree (code vs code, code vs direction, model vs dataset).
class DimensionError : public Error {
public:
    using Error::Error;
};

// A direction whose witness projection (or norm) is too close to zero to score with.
class DegenerateDirectionError : public Error {
public:
    DegenerateDirectionError(const std::string& what, std::int64_t identity_id)
        : Error(what), identity_id_(identity_id) {}

    std::int64_t identity_id() const noexcept { return identity_id_; }

private:
    std::int64_t identity_id_;
};

// Input violates a documented precondition (empty dataset, bad config, single-label table...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Malformed text input. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, const std::string& source = {})
        : Error(format(what, line, source)), message_(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

    // Same error attributed to a named source (usually a file path).
    ParseError in_source(const std::string& source) const {
        return ParseError(message_, line_, source);
    }

private:
    static std::string format(const std::string& what, std::size_t line,
                              const std::string& source) {
        std::string out = source.empty() ? std::string{} : source + ":";
        if (line) out += (source.empty() ? "line " : "") + std::to_string(line) + ":";
        return out.empty() ? what : out + " " + what;
    }

    std::string message_;
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace irisdd
