#pragma once

#include <stdexcept>
#include <string>

namespace hexctl {

// Bad or inconsistent configuration / inputs. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical breakdown at runtime (divergent iteration, non-finite state).
// CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation invoked on a rule base with no rules.
struct EmptyRuleBaseError : std::logic_error {
    EmptyRuleBaseError() : std::logic_error("rule base is empty; grow a rule first") {}
};

}  // namespace hexctl
