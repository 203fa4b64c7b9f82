#pragma once
#include <stdexcept>
#include <string>

namespace helmlab {

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quadrature / extrapolation that did not reach its tolerance.
struct AccuracyError : std::runtime_error {
    AccuracyError(const std::string& what, double last = 0.0, double previous = 0.0)
        : std::runtime_error(what), last_estimate(last), previous_estimate(previous) {}
    double last_estimate;
    double previous_estimate;
};

// A symbol was evaluated at one of its poles.
struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace helmlab
