#pragma once

#include <stdexcept>
#include <string>

namespace qawkb {

struct NonConvergenceError : std::runtime_error {
    explicit NonConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct StepFailureError : std::runtime_error {
    explicit StepFailureError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateInputError : std::invalid_argument {
    explicit DegenerateInputError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct GridMismatchError : std::invalid_argument {
    explicit GridMismatchError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct SingularityError : std::domain_error {
    explicit SingularityError(const std::string& msg) : std::domain_error(msg) {}
};

struct SingularSystemError : std::runtime_error {
    explicit SingularSystemError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotReachedError : std::runtime_error {
    explicit NotReachedError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qawkb
