#pragma once

#include <stdexcept>
#include <string>

namespace fcdtt {

// Bad input data or files (broken chains, malformed CSV rows, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string &msg) : std::runtime_error(msg) {}
};

// Bad run configuration (impossible split sizes, empty folds, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

// A solver produced non-finite output.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace fcdtt
