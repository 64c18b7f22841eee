#pragma once

#include <stdexcept>
#include <string>

namespace gravclock {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// 2GM/(c^2 r) exceeded the configured weak-field threshold.
class WeakFieldViolation : public Error {
public:
    using Error::Error;
};

// dtau/dt would be imaginary or zero.
class NotTimelike : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class UnknownLabel : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace gravclock
