#ifndef DESCS_RELATIONS_HPP
#define DESCS_RELATIONS_HPP

#include <utility>
#include <vector>

#include "descs/automaton.hpp"

namespace descs {

/// Set of state pairs between a left and a right automaton, kept sorted.
class Relation {
public:
    Relation() = default;
    explicit Relation(std::vector<std::pair<StateId, StateId>> pairs);

    bool contains(StateId left, StateId right) const;
    const std::vector<std::pair<StateId, StateId>>& pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }

private:
    std::vector<std::pair<StateId, StateId>> pairs_;
};

/// Largest relation phi over states(a) x states(b) such that every pair
/// matches transitions (each a-move is answered by a b-move staying in phi)
/// and marking (a marked state only relates to marked states).  `a` is
/// simulated by `b` iff the initial pair is contained.
Relation greatest_simulation(const Automaton& a, const Automaton& b);

struct BisimResult {
    bool equivalent = false;
    /// Cross-automaton pairs of bisimilar states (a-state, b-state); the
    /// symmetric closure on the disjoint union restricted to cross pairs.
    Relation relation;
};

/// Bisimulation equivalence by partition refinement on the disjoint union,
/// with the initial split separating marked from unmarked states.
BisimResult bisimilar(const Automaton& a, const Automaton& b);

/// states(b) co-reachable with each state of `a` by a common string:
/// result[x1] is the sorted set of x2 with some s reaching x1 in `a` and
/// x2 in `b`.  Unreachable states of `a` map to the empty set.
std::vector<std::vector<StateId>> synchronized_state_map(const Automaton& a,
                                                         const Automaton& b);

/// True iff there is a simulation of `a` by `b` containing every
/// synchronized state pair (equivalently, every synchronized pair lies in
/// the greatest simulation).
bool synchronously_simulated(const DetAutomaton& a, const Automaton& b);

} // namespace descs

#endif
