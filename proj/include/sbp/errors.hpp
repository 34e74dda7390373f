#pragma once

#include <stdexcept>
#include <string>

namespace sbp {

// Operation is valid but exceeds a configured resource budget (n too large,
// k beyond the fast-path family, missing cycle order, ...).
struct capability_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A rejection sampler ran out of its retry budget.
struct sampling_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad config file / CLI usage; carries line and field diagnostics in the message.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sbp
