#pragma once

#include <stdexcept>
#include <string>

namespace heishom {

struct UnknownModelError : std::runtime_error {
    explicit UnknownModelError(const std::string& id)
        : std::runtime_error("unknown model: " + id) {}
};

struct InvalidGammaError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularPointError : std::domain_error {
    SingularPointError() : std::domain_error("log barrier undefined at y = 0") {}
};

struct NumericalBlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergenceError : std::runtime_error {
    double final_residual;
    NoConvergenceError(const std::string& what, double res)
        : std::runtime_error(what), final_residual(res) {}
};

struct InvalidTimestepError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace heishom
