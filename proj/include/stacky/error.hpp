#pragma once

#include <stdexcept>
#include <string>

namespace stacky {

// Domain errors (bad group data, inadequate raising functions, exceeded
// bounds...). The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax errors in the stack-spec / raising mini-language; carries the byte
// offset of the first offending character.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, size_t offset)
        : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    size_t offset() const { return offset_; }

private:
    size_t offset_;
};

}  // namespace stacky
