#pragma once

#include <stdexcept>
#include <string>

namespace stiefel {

/// Raised when caller-supplied parameters violate an operation's preconditions.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a freshly computed witness or certificate fails its own check.
/// Indicates a bug, never bad input.
class VerificationFailure : public std::logic_error {
public:
    explicit VerificationFailure(const std::string& what) : std::logic_error(what) {}
};

}  // namespace stiefel
