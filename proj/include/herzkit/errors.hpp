#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace herzkit {

enum class ErrorKind {
    input_domain,  // non-finite or malformed numeric input
    domain,        // parameter outside its mathematical domain
    shape,         // mismatched grids or dimensions
    range,         // dyadic index outside the window
    capability,    // valid request the implementation does not support
    precondition,  // theorem hypotheses not met
    parse,         // unreadable file or argument
    io
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace herzkit
