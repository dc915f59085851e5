#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsochan {

// Input outside the mathematical domain of an operation (negative variance,
// V < 1, non-positive aperture ratio, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical procedure failed to reach its tolerance or produced a result
// that violates a physical invariant.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, double achieved = 0.0)
        : std::runtime_error(what), achieved_(achieved) {}

    // Achieved error estimate (or offending value) when meaningful, else 0.
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Malformed user data. Carries the 0-based sample index or 1-based line
// number of the offending entry.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(const std::string& what, std::size_t position)
        : std::invalid_argument(what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

void require_finite(double value, const char* name);
void require_positive(double value, const char* name);
void require_non_negative(double value, const char* name);

}  // namespace detail
}  // namespace fsochan
