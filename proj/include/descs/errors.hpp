#ifndef DESCS_ERRORS_HPP
#define DESCS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace descs {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands that must share one event alphabet (same events, same
/// controllability partition) do not.
class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

/// Parallel composition found an event that is uncontrollable in one
/// operand and controllable in the other.
class AlphabetConflict : public Error {
public:
    using Error::Error;
};

/// A state restriction was asked to drop the initial state.  Callers that
/// compute sub-specifications treat this as "the result is empty".
class InitialStateRemoved : public Error {
public:
    using Error::Error;
};

/// A subset construction grew past the configured state budget.
class StateLimitExceeded : public Error {
public:
    using Error::Error;
};

/// A deterministic automaton was required but the input has two transitions
/// with the same source state and event.
class NondeterministicAutomaton : public Error {
public:
    NondeterministicAutomaton(const std::string& state, const std::string& event)
        : Error("automaton is not deterministic: state '" + state +
                "' has several transitions on event '" + event + "'"),
          state_(state),
          event_(event) {}

    const std::string& state() const noexcept { return state_; }
    const std::string& event() const noexcept { return event_; }

private:
    std::string state_;
    std::string event_;
};

/// Malformed automaton file; line() is 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An oracle was asked to run outside its instance-size budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A long-running operation observed a cancellation request.
class Cancelled : public Error {
public:
    Cancelled() : Error("operation cancelled") {}
};

} // namespace descs

#endif
