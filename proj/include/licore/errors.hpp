// errors.hpp - exception types shared by the licore library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace licore {

// Caller supplied a value outside the operation's domain (bad unit tag,
// negative rate, empty grid, ...). Maps to CLI exit code 2.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The inputs are well formed but the requested quantity does not exist or
// cannot be computed (no T_min root, degenerate steady state, weak-drive
// formula used outside its regime). Maps to CLI exit code 3.
class NumericalDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// File could not be read or written. Maps to CLI exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace licore
