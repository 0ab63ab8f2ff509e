#pragma once

#include <stdexcept>
#include <string>

namespace tflat {

// Singular operators, failed convergence, violated analytic hypotheses.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HypothesisError : NumericalError {
    using NumericalError::NumericalError;
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace tflat
