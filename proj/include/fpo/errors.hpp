#pragma once

#include <stdexcept>
#include <string>

namespace fpo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct NonFiniteError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct SupportError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct LengthError : Error {
    using Error::Error;
};

struct DivergenceError : Error {
    using Error::Error;
};

struct OptimizationError : Error {
    using Error::Error;
};

}  // namespace fpo
