#pragma once

#include <stdexcept>
#include <string>

namespace weylcst {

// Dimension / blade-index mismatches between operands, or an m outside the
// supported range.  Always a caller bug, never a data-dependent condition.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input data is structurally or numerically unusable (malformed JSON, NaN
// samples, non power-of-two grid, ...).  CLI maps this to exit code 2.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A series did not reach the requested tail bound within the order cap.
// Carries the bound that was actually achieved so callers can report it.
struct truncation_error : std::runtime_error {
    truncation_error(const std::string& what, double achieved, int order)
        : std::runtime_error(what), achieved_bound(achieved), order_reached(order) {}
    double achieved_bound;
    int order_reached;
};

}  // namespace weylcst
