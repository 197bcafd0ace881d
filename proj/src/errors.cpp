#include "herzkit/errors.hpp"

namespace herzkit {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::input_domain: return "input-domain";
    case ErrorKind::domain: return "domain";
    case ErrorKind::shape: return "shape";
    case ErrorKind::range: return "range";
    case ErrorKind::capability: return "capability";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind)
{
}

void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

}  // namespace herzkit
