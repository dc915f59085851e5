#include "fsochan/errors.hpp"

#include <cmath>
#include <string>

namespace fsochan::detail {

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be finite");
    }
}

void require_positive(double value, const char* name) {
    require_finite(value, name);
    if (!(value > 0.0)) {
        throw DomainError(std::string(name) + " must be positive, got " + std::to_string(value));
    }
}

void require_non_negative(double value, const char* name) {
    require_finite(value, name);
    if (value < 0.0) {
        throw DomainError(std::string(name) + " must be non-negative, got " +
                          std::to_string(value));
    }
}

}  // namespace fsochan::detail
