#pragma once

#include <stdexcept>
#include <string>

namespace fermient {

/// Caller supplied arguments outside an operation's domain.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine produced a result that fails its own consistency checks
/// (eigenvalues out of range, probabilities with imaginary residue, ...).
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fermient
