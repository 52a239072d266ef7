#pragma once

#include <stdexcept>
#include <string>

namespace dicke3 {

/// Model parameters or requests that violate a documented precondition.
class InvalidConfig : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Both couplings entering a decoupling angle vanish.
class UndefinedAngle : public InvalidConfig {
public:
    using InvalidConfig::InvalidConfig;
};

/// Basis would exceed the configured memory guard.
class DimensionLimit : public InvalidConfig {
public:
    using InvalidConfig::InvalidConfig;
};

/// Operands built on different bases.
class BasisMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its tolerance.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dicke3
