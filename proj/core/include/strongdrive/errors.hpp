#pragma once

#include <stdexcept>
#include <string>

namespace strongdrive {

/// Invalid argument or violated precondition (bad index, non-normalized state, ω ≤ 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive propagation could not continue; carries the time at which the step size underflowed.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double failure_time)
        : std::runtime_error(what), time_(failure_time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Adaptive quadrature ran out of node budget before reaching its tolerance.
/// `level()` is the nesting depth of the failing integral (0 = outermost).
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, int nesting_level)
        : std::runtime_error(what), level_(nesting_level) {}

    int level() const noexcept { return level_; }

private:
    int level_;
};

} // namespace strongdrive
