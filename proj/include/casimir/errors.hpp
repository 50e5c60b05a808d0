#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Argument outside the domain of a function (pole, non-positive separation, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series or quadrature hit its refinement cap before meeting tolerance.
/// The message names the failing evaluation.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace casimir
