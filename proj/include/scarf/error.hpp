#pragma once

#include <stdexcept>
#include <string>

namespace scarf {

/// Raised when a requested level does not exist at the given parameters.
class NonexistentLevel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Failure of an iterative or integrating numerical routine.
class SolverError : public std::runtime_error {
public:
    enum class Kind { MaxIterations, DivergedOutOfWindow, NonFinite, IllConditioned };

    SolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

} // namespace scarf
