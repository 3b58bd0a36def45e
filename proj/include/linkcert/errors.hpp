#pragma once

#include <stdexcept>
#include <string>

namespace linkcert {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct NotConnected : std::runtime_error {
    explicit NotConnected(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionViolated : std::runtime_error {
    explicit PreconditionViolated(const std::string& what) : std::runtime_error(what) {}
};

struct ArcNotOnComponent : std::runtime_error {
    explicit ArcNotOnComponent(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedParameter : std::runtime_error {
    explicit UnsupportedParameter(const std::string& what) : std::runtime_error(what) {}
};

struct InternalInconsistency : std::runtime_error {
    explicit InternalInconsistency(const std::string& what) : std::runtime_error(what) {}
};

} // namespace linkcert
