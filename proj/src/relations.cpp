#include "descs/relations.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace descs {

Relation::Relation(std::vector<std::pair<StateId, StateId>> pairs)
    : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool Relation::contains(StateId left, StateId right) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(left, right));
}

Relation greatest_simulation(const Automaton& a, const Automaton& b_in) {
    Automaton b = detail::aligned_to(a, b_in, "greatest_simulation");
    const std::size_t na = a.num_states();
    const std::size_t nb = b.num_states();
    const std::size_t n_events = a.alphabet().size();

    // Start from the marking-consistent pairs and peel off pairs whose
    // transition condition fails against the current relation.
    std::vector<std::vector<bool>> rel(na, std::vector<bool>(nb));
    for (StateId x = 0; x < na; ++x) {
        for (StateId y = 0; y < nb; ++y) rel[x][y] = !a.marked(x) || b.marked(y);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId x = 0; x < na; ++x) {
            for (StateId y = 0; y < nb; ++y) {
                if (!rel[x][y]) continue;
                bool ok = true;
                for (EventId e = 0; e < n_events && ok; ++e) {
                    for (StateId tx : a.targets(x, e)) {
                        bool answered = false;
                        for (StateId ty : b.targets(y, e)) {
                            if (rel[tx][ty]) {
                                answered = true;
                                break;
                            }
                        }
                        if (!answered) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok) {
                    rel[x][y] = false;
                    changed = true;
                }
            }
        }
    }

    std::vector<std::pair<StateId, StateId>> pairs;
    for (StateId x = 0; x < na; ++x) {
        for (StateId y = 0; y < nb; ++y) {
            if (rel[x][y]) pairs.emplace_back(x, y);
        }
    }
    return Relation(std::move(pairs));
}

BisimResult bisimilar(const Automaton& a, const Automaton& b_in) {
    Automaton b = detail::aligned_to(a, b_in, "bisimilar");
    const std::size_t na = a.num_states();
    const std::size_t n = na + b.num_states();
    const std::size_t n_events = a.alphabet().size();

    auto marked_of = [&](std::size_t s) { return s < na ? a.marked(s) : b.marked(s - na); };
    auto targets_of = [&](std::size_t s, EventId e) -> const std::vector<StateId>& {
        return s < na ? a.targets(s, e) : b.targets(s - na, e);
    };

    std::vector<std::size_t> block(n);
    std::size_t n_blocks = 0;
    {
        std::map<bool, std::size_t> initial;
        for (std::size_t s = 0; s < n; ++s) {
            auto [it, inserted] = initial.emplace(marked_of(s), n_blocks);
            if (inserted) ++n_blocks;
            block[s] = it->second;
        }
    }
    for (;;) {
        // Signature: per event, the set of blocks reachable in one step.
        using Signature = std::vector<std::vector<std::size_t>>;
        std::map<std::pair<std::size_t, Signature>, std::size_t> ids;
        std::vector<std::size_t> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            Signature sig(n_events);
            for (EventId e = 0; e < n_events; ++e) {
                std::set<std::size_t> succ;
                for (StateId t : targets_of(s, e)) {
                    succ.insert(block[s < na ? t : t + na - na] + 0); // placeholder
                }
                sig[e].assign(succ.begin(), succ.end());
            }
            auto [it, inserted] =
                ids.emplace(std::make_pair(block[s], std::move(sig)), ids.size());
            (void)inserted;
            next[s] = it->second;
        }
        if (ids.size() == n_blocks) break;
        n_blocks = ids.size();
        block = std::move(next);
    }

    std::vector<std::pair<StateId, StateId>> pairs;
    for (StateId x = 0; x < na; ++x) {
        for (StateId y = 0; y < b.num_states(); ++y) {
            if (block[x] == block[na + y]) pairs.emplace_back(x, y);
        }
    }
    BisimResult out;
    out.equivalent = block[a.initial()] == block[na + b.initial()];
    out.relation = Relation(std::move(pairs));
    return out;
}

std::vector<std::vector<StateId>> synchronized_state_map(const Automaton& a,
                                                         const Automaton& b_in) {
    Automaton b = detail::aligned_to(a, b_in, "synchronized_state_map");
    // With equal alphabets the parallel composition degenerates to the
    // synchronous product, whose reachable pairs are exactly the pairs
    // co-reached by a common string.
    TracedProduct product = parallel_traced(a, b);
    std::vector<std::set<StateId>> grouped(a.num_states());
    for (const auto& [xa, xb] : product.components) grouped[xa].insert(xb);
    std::vector<std::vector<StateId>> out(a.num_states());
    for (StateId x = 0; x < a.num_states(); ++x) {
        out[x].assign(grouped[x].begin(), grouped[x].end());
    }
    return out;
}

bool synchronously_simulated(const DetAutomaton& a, const Automaton& b) {
    Relation sim = greatest_simulation(a, b);
    if (!sim.contains(a.initial(), b.initial())) return false;
    auto sync = synchronized_state_map(a, b);
    for (StateId x = 0; x < a.num_states(); ++x) {
        for (StateId y : sync[x]) {
            if (!sim.contains(x, y)) return false;
        }
    }
    return true;
}

} // namespace descs
