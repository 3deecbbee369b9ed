#pragma once

#include <stdexcept>
#include <string>

namespace depthlab {

// Configuration / usage problems (bad parameters, exceeded ceilings). CLI exit 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Domain problems in otherwise well-formed runs (non-IL machine, bad codeword). CLI exit 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text; carries a 1-based line number when known.
class ParseError : public DomainError {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : DomainError(line ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace depthlab
