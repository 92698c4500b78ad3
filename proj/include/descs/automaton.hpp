#ifndef DESCS_AUTOMATON_HPP
#define DESCS_AUTOMATON_HPP

#include <atomic>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "descs/errors.hpp"

namespace descs {

using StateId = std::size_t;
using EventId = std::size_t;

/// Finite event alphabet with a controllable/uncontrollable partition.
/// Event order is the declared order; it drives every canonical ordering
/// (breadth-first traversals, witness tie-breaks, file output).
class EventAlphabet {
public:
    EventAlphabet() = default;

    /// Throws Error on empty symbols, duplicates, or an uncontrollable
    /// symbol that is not an event.
    EventAlphabet(std::vector<std::string> events,
                  const std::vector<std::string>& uncontrollable);

    std::size_t size() const noexcept { return events_.size(); }
    const std::string& name(EventId e) const { return events_.at(e); }
    const std::vector<std::string>& names() const noexcept { return events_; }
    std::optional<EventId> find(std::string_view name) const;
    bool uncontrollable(EventId e) const { return uncontrollable_.at(e); }
    std::vector<EventId> uncontrollable_events() const;
    std::vector<std::string> uncontrollable_names() const;

    /// Same event set and same controllability partition, ignoring order.
    bool same_partition(const EventAlphabet& other) const;

private:
    std::vector<std::string> events_;
    std::vector<bool> uncontrollable_;
    std::unordered_map<std::string, EventId> index_;
};

struct Transition {
    StateId src;
    EventId event;
    StateId dst;

    auto operator<=>(const Transition&) const = default;
};

/// Nondeterministic finite automaton with marked states.  Immutable after
/// construction; duplicate transition triples are merged silently.
class Automaton {
public:
    Automaton(EventAlphabet alphabet,
              std::vector<std::string> state_names,
              StateId initial,
              std::vector<bool> marked,
              const std::vector<Transition>& transitions);

    const EventAlphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t num_states() const noexcept { return names_.size(); }
    StateId initial() const noexcept { return initial_; }
    bool marked(StateId s) const { return marked_.at(s); }
    const std::vector<bool>& marked_flags() const noexcept { return marked_; }
    const std::string& state_name(StateId s) const { return names_.at(s); }
    const std::vector<std::string>& state_names() const noexcept { return names_; }
    std::optional<StateId> find_state(std::string_view name) const;

    /// Sorted target set of (s, e); empty when the event is not enabled.
    const std::vector<StateId>& targets(StateId s, EventId e) const {
        return post_.at(s).at(e);
    }
    bool enables(StateId s, EventId e) const { return !targets(s, e).empty(); }
    std::vector<EventId> active_events(StateId s) const;

    std::vector<Transition> transitions() const;
    std::size_t num_transitions() const noexcept { return num_transitions_; }
    bool deterministic() const noexcept;

private:
    EventAlphabet alphabet_;
    std::vector<std::string> names_;
    StateId initial_ = 0;
    std::vector<bool> marked_;
    std::vector<std::vector<std::vector<StateId>>> post_; // [state][event]
    std::unordered_map<std::string, StateId> name_index_;
    std::size_t num_transitions_ = 0;
};

/// Automaton with at most one outgoing transition per (state, event).
class DetAutomaton : public Automaton {
public:
    /// Throws NondeterministicAutomaton naming the offending state/event.
    explicit DetAutomaton(Automaton base);

    std::optional<StateId> target(StateId s, EventId e) const {
        const auto& t = targets(s, e);
        if (t.empty()) return std::nullopt;
        return t.front();
    }
};

/// Cooperative cancellation for long-running operations.
class CancelToken {
public:
    void request_stop() noexcept { stop_.store(true, std::memory_order_relaxed); }
    bool stop_requested() const noexcept { return stop_.load(std::memory_order_relaxed); }

private:
    std::atomic<bool> stop_{false};
};

inline constexpr std::size_t kDefaultStateLimit = 1'000'000;

/// State budget and cancellation hook threaded through the operations that
/// can blow up (subset constructions, fixpoints).
struct RunLimits {
    std::size_t state_limit = kDefaultStateLimit;
    const CancelToken* cancel = nullptr;

    void check_cancel() const {
        if (cancel != nullptr && cancel->stop_requested()) throw Cancelled();
    }
    void check_states(std::size_t n) const {
        if (n > state_limit) {
            throw StateLimitExceeded("state budget of " + std::to_string(state_limit) +
                                     " states exceeded");
        }
    }
};

/// Restriction of `a` to the states reachable from the initial state.
/// States come out in breadth-first order (events in declared alphabet
/// order); generated and marked languages are unchanged.
Automaton accessible(const Automaton& a);

/// Restriction of `a` to `keep`: transitions with both endpoints kept,
/// marked set intersected.  Throws InitialStateRemoved when the initial
/// state is dropped.  The result may contain unreachable states; compose
/// with accessible() to remove them.
Automaton subautomaton(const Automaton& a, const std::vector<StateId>& keep);

/// Parallel composition: shared events synchronize, private events
/// interleave.  Alphabet is the union (left operand's order first),
/// uncontrollable events the union of both partitions; marked states are
/// the pairs marked on both sides.  Only the reachable part is built.
/// Throws AlphabetConflict when a shared event is uncontrollable on one
/// side only.
Automaton parallel(const Automaton& a, const Automaton& b);

/// parallel() plus the (left state, right state) pair behind each product
/// state, for callers that need to track components.
struct TracedProduct {
    Automaton automaton;
    std::vector<std::pair<StateId, StateId>> components;
};
TracedProduct parallel_traced(const Automaton& a, const Automaton& b);

/// Subset construction (non-empty subsets only; a macro-state is marked iff
/// it contains a marked state), followed by minimization over the partial
/// transition function and canonical breadth-first renaming to s0, s1, ...
/// Generated and marked languages are preserved exactly.
DetAutomaton determinize(const Automaton& a, const RunLimits& limits = {});

/// Adds a fresh unmarked dump state (last state of the result, named
/// "__Dd") that absorbs every uncontrollable event undefined in `a` and
/// loops on all uncontrollable events.  Every state of the result enables
/// every uncontrollable event.  The dump state is kept even when
/// unreachable.
Automaton uncontrollable_augment(const Automaton& a);

/// Rebuilds `a` over `target`, which must carry the same events and the
/// same controllability partition (possibly in a different order).
Automaton reindex_events(const Automaton& a, const EventAlphabet& target);

namespace detail {

/// True when every state of `a` enables every uncontrollable event.
bool all_uncontrollable_enabled(const Automaton& a);

/// First name not used by `names`: `base`, then `base.1`, `base.2`, ...
std::string fresh_name(const std::vector<std::string>& names, const std::string& base);

/// Requires a.alphabet and b.alphabet to agree as partitioned sets; returns
/// b rebuilt over a's alphabet (b itself when the orders already match).
Automaton aligned_to(const Automaton& a, const Automaton& b, const char* op);

} // namespace detail

} // namespace descs

#endif
