#pragma once

#include <stdexcept>
#include <string>

namespace mcsf {

// Base of every error thrown by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed graph / instance / certificate text.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

// An algorithm was called outside its contract (cover too large, isolated
// vertex, bad partition, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A configured budget (node count, vertex limit, canonicalization size) would
// be exceeded. Never carries a partial answer.
class ResourceError : public Error {
public:
    using Error::Error;
};

} // namespace mcsf
