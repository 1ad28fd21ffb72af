#ifndef ATLAS_ERRORS_HPP
#define ATLAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace atlas {

// Exit codes used by the CLI.
enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_BUDGET = 2,
    EXIT_NUMERIC = 3,
    EXIT_INTERNAL = 4,
};

// Degree/iteration budget exceeded.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric instability: tracking stall, unstable cycle type at infinity,
// unresolved kneading symbol after retries.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal consistency violation (construction bug, must abort).
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace atlas

#endif
