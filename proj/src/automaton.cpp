#include "descs/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>

namespace descs {

// --------------------------------------------------------------------------
// EventAlphabet

EventAlphabet::EventAlphabet(std::vector<std::string> events,
                             const std::vector<std::string>& uncontrollable)
    : events_(std::move(events)) {
    uncontrollable_.assign(events_.size(), false);
    for (EventId e = 0; e < events_.size(); ++e) {
        if (events_[e].empty()) throw Error("empty event symbol");
        if (!index_.emplace(events_[e], e).second) {
            throw Error("duplicate event symbol '" + events_[e] + "'");
        }
    }
    for (const auto& u : uncontrollable) {
        auto it = index_.find(u);
        if (it == index_.end()) {
            throw Error("uncontrollable symbol '" + u + "' is not in the alphabet");
        }
        uncontrollable_[it->second] = true;
    }
}

std::optional<EventId> EventAlphabet::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<EventId> EventAlphabet::uncontrollable_events() const {
    std::vector<EventId> out;
    for (EventId e = 0; e < size(); ++e) {
        if (uncontrollable_[e]) out.push_back(e);
    }
    return out;
}

std::vector<std::string> EventAlphabet::uncontrollable_names() const {
    std::vector<std::string> out;
    for (EventId e : uncontrollable_events()) out.push_back(events_[e]);
    return out;
}

bool EventAlphabet::same_partition(const EventAlphabet& other) const {
    if (size() != other.size()) return false;
    for (EventId e = 0; e < size(); ++e) {
        auto o = other.find(events_[e]);
        if (!o || other.uncontrollable(*o) != uncontrollable_[e]) return false;
    }
    return true;
}

// --------------------------------------------------------------------------
// Automaton

Automaton::Automaton(EventAlphabet alphabet,
                     std::vector<std::string> state_names,
                     StateId initial,
                     std::vector<bool> marked,
                     const std::vector<Transition>& transitions)
    : alphabet_(std::move(alphabet)),
      names_(std::move(state_names)),
      initial_(initial),
      marked_(std::move(marked)) {
    const std::size_t n = names_.size();
    if (n == 0) throw Error("automaton needs at least the initial state");
    if (initial_ >= n) throw Error("initial state out of range");
    if (marked_.size() != n) throw Error("marked flag count does not match state count");
    for (StateId s = 0; s < n; ++s) {
        if (names_[s].empty()) throw Error("empty state name");
        if (!name_index_.emplace(names_[s], s).second) {
            throw Error("duplicate state name '" + names_[s] + "'");
        }
    }
    post_.assign(n, std::vector<std::vector<StateId>>(alphabet_.size()));
    for (const auto& t : transitions) {
        if (t.src >= n || t.dst >= n) throw Error("transition endpoint out of range");
        if (t.event >= alphabet_.size()) throw Error("transition event out of range");
        post_[t.src][t.event].push_back(t.dst);
    }
    for (auto& by_event : post_) {
        for (auto& targets : by_event) {
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            num_transitions_ += targets.size();
        }
    }
}

std::optional<StateId> Automaton::find_state(std::string_view name) const {
    auto it = name_index_.find(std::string(name));
    if (it == name_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<EventId> Automaton::active_events(StateId s) const {
    std::vector<EventId> out;
    for (EventId e = 0; e < alphabet_.size(); ++e) {
        if (!post_.at(s)[e].empty()) out.push_back(e);
    }
    return out;
}

std::vector<Transition> Automaton::transitions() const {
    std::vector<Transition> out;
    out.reserve(num_transitions_);
    for (StateId s = 0; s < num_states(); ++s) {
        for (EventId e = 0; e < alphabet_.size(); ++e) {
            for (StateId d : post_[s][e]) out.push_back({s, e, d});
        }
    }
    return out;
}

bool Automaton::deterministic() const noexcept {
    for (const auto& by_event : post_) {
        for (const auto& targets : by_event) {
            if (targets.size() > 1) return false;
        }
    }
    return true;
}

DetAutomaton::DetAutomaton(Automaton base) : Automaton(std::move(base)) {
    for (StateId s = 0; s < num_states(); ++s) {
        for (EventId e = 0; e < alphabet().size(); ++e) {
            if (targets(s, e).size() > 1) {
                throw NondeterministicAutomaton(state_name(s), alphabet().name(e));
            }
        }
    }
}

// --------------------------------------------------------------------------
// Helpers

namespace detail {

bool all_uncontrollable_enabled(const Automaton& a) {
    for (StateId s = 0; s < a.num_states(); ++s) {
        for (EventId e : a.alphabet().uncontrollable_events()) {
            if (!a.enables(s, e)) return false;
        }
    }
    return true;
}

std::string fresh_name(const std::vector<std::string>& names, const std::string& base) {
    auto taken = [&](const std::string& candidate) {
        return std::find(names.begin(), names.end(), candidate) != names.end();
    };
    if (!taken(base)) return base;
    for (std::size_t i = 1;; ++i) {
        std::string candidate = base + "." + std::to_string(i);
        if (!taken(candidate)) return candidate;
    }
}

Automaton aligned_to(const Automaton& a, const Automaton& b, const char* op) {
    if (!a.alphabet().same_partition(b.alphabet())) {
        throw AlphabetMismatch(std::string(op) + ": operands have different alphabets");
    }
    if (a.alphabet().names() == b.alphabet().names()) return b;
    return reindex_events(b, a.alphabet());
}

} // namespace detail

// --------------------------------------------------------------------------
// Operations

Automaton accessible(const Automaton& a) {
    std::vector<StateId> order;
    std::vector<StateId> old_to_new(a.num_states(), static_cast<StateId>(-1));
    std::deque<StateId> queue;
    auto visit = [&](StateId s) {
        if (old_to_new[s] != static_cast<StateId>(-1)) return;
        old_to_new[s] = order.size();
        order.push_back(s);
        queue.push_back(s);
    };
    visit(a.initial());
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (EventId e = 0; e < a.alphabet().size(); ++e) {
            for (StateId d : a.targets(s, e)) visit(d);
        }
    }

    std::vector<std::string> names;
    std::vector<bool> marked;
    for (StateId old : order) {
        names.push_back(a.state_name(old));
        marked.push_back(a.marked(old));
    }
    std::vector<Transition> trans;
    for (StateId old : order) {
        for (EventId e = 0; e < a.alphabet().size(); ++e) {
            for (StateId d : a.targets(old, e)) {
                trans.push_back({old_to_new[old], e, old_to_new[d]});
            }
        }
    }
    return Automaton(a.alphabet(), std::move(names), 0, std::move(marked), trans);
}

Automaton subautomaton(const Automaton& a, const std::vector<StateId>& keep) {
    std::vector<bool> kept(a.num_states(), false);
    for (StateId s : keep) {
        if (s >= a.num_states()) throw Error("subautomaton: state out of range");
        kept[s] = true;
    }
    if (!kept[a.initial()]) {
        throw InitialStateRemoved("subautomaton: initial state '" +
                                  a.state_name(a.initial()) + "' not kept");
    }
    std::vector<StateId> old_to_new(a.num_states(), static_cast<StateId>(-1));
    std::vector<std::string> names;
    std::vector<bool> marked;
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (!kept[s]) continue;
        old_to_new[s] = names.size();
        names.push_back(a.state_name(s));
        marked.push_back(a.marked(s));
    }
    std::vector<Transition> trans;
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (!kept[s]) continue;
        for (EventId e = 0; e < a.alphabet().size(); ++e) {
            for (StateId d : a.targets(s, e)) {
                if (kept[d]) trans.push_back({old_to_new[s], e, old_to_new[d]});
            }
        }
    }
    return Automaton(a.alphabet(), std::move(names), old_to_new[a.initial()],
                     std::move(marked), trans);
}

TracedProduct parallel_traced(const Automaton& a, const Automaton& b) {
    // Union alphabet, left operand's declared order first.
    std::vector<std::string> events = a.alphabet().names();
    std::vector<std::string> unctrl = a.alphabet().uncontrollable_names();
    for (EventId eb = 0; eb < b.alphabet().size(); ++eb) {
        const std::string& name = b.alphabet().name(eb);
        auto ea = a.alphabet().find(name);
        if (ea) {
            if (a.alphabet().uncontrollable(*ea) != b.alphabet().uncontrollable(eb)) {
                throw AlphabetConflict("parallel: event '" + name +
                                       "' is uncontrollable in one operand only");
            }
        } else {
            events.push_back(name);
            if (b.alphabet().uncontrollable(eb)) unctrl.push_back(name);
        }
    }
    EventAlphabet alphabet(events, unctrl);

    struct Local {
        // Event of the operand, or npos when the event is private to the
        // other side.
        std::vector<EventId> event_of;
        static constexpr EventId npos = static_cast<EventId>(-1);
    };
    Local la, lb;
    la.event_of.assign(alphabet.size(), Local::npos);
    lb.event_of.assign(alphabet.size(), Local::npos);
    for (EventId e = 0; e < alphabet.size(); ++e) {
        if (auto ea = a.alphabet().find(alphabet.name(e))) la.event_of[e] = *ea;
        if (auto eb = b.alphabet().find(alphabet.name(e))) lb.event_of[e] = *eb;
    }

    std::map<std::pair<StateId, StateId>, StateId> ids;
    std::vector<std::pair<StateId, StateId>> components;
    std::vector<Transition> trans;
    std::deque<StateId> queue;
    auto state_of = [&](StateId xa, StateId xb) {
        auto [it, inserted] = ids.emplace(std::make_pair(xa, xb), components.size());
        if (inserted) {
            components.emplace_back(xa, xb);
            queue.push_back(it->second);
        }
        return it->second;
    };
    state_of(a.initial(), b.initial());
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        auto [xa, xb] = components[s];
        for (EventId e = 0; e < alphabet.size(); ++e) {
            EventId ea = la.event_of[e];
            EventId eb = lb.event_of[e];
            if (ea != Local::npos && eb != Local::npos) {
                if (!a.enables(xa, ea) || !b.enables(xb, eb)) continue;
                for (StateId ta : a.targets(xa, ea)) {
                    for (StateId tb : b.targets(xb, eb)) {
                        trans.push_back({s, e, state_of(ta, tb)});
                    }
                }
            } else if (ea != Local::npos) {
                for (StateId ta : a.targets(xa, ea)) {
                    trans.push_back({s, e, state_of(ta, xb)});
                }
            } else if (eb != Local::npos) {
                for (StateId tb : b.targets(xb, eb)) {
                    trans.push_back({s, e, state_of(xa, tb)});
                }
            }
        }
    }

    std::vector<std::string> names;
    std::vector<bool> marked;
    names.reserve(components.size());
    for (auto [xa, xb] : components) {
        names.push_back("(" + a.state_name(xa) + "," + b.state_name(xb) + ")");
        marked.push_back(a.marked(xa) && b.marked(xb));
    }
    return {Automaton(std::move(alphabet), std::move(names), 0, std::move(marked), trans),
            std::move(components)};
}

Automaton parallel(const Automaton& a, const Automaton& b) {
    return parallel_traced(a, b).automaton;
}

namespace {

// Moore-style partition refinement of a deterministic automaton with a
// partial transition function.  Initial split marked/unmarked; the
// signature distinguishes undefined events from defined ones, so both the
// generated and the marked language are preserved.  Returns the quotient
// with states renamed s0, s1, ... in breadth-first order.
DetAutomaton minimize_canonical(const Automaton& det) {
    assert(det.deterministic());
    const std::size_t n = det.num_states();
    const std::size_t n_events = det.alphabet().size();

    std::vector<std::size_t> block(n);
    std::size_t n_blocks = 0;
    {
        std::map<bool, std::size_t> initial;
        for (StateId s = 0; s < n; ++s) {
            auto [it, inserted] = initial.emplace(det.marked(s), n_blocks);
            if (inserted) ++n_blocks;
            block[s] = it->second;
        }
    }
    for (;;) {
        using Signature = std::vector<std::size_t>;
        std::map<std::pair<std::size_t, Signature>, std::size_t> next_ids;
        std::vector<std::size_t> next_block(n);
        for (StateId s = 0; s < n; ++s) {
            Signature sig(n_events);
            for (EventId e = 0; e < n_events; ++e) {
                const auto& t = det.targets(s, e);
                sig[e] = t.empty() ? n : block[t.front()];
            }
            auto [it, inserted] =
                next_ids.emplace(std::make_pair(block[s], std::move(sig)), next_ids.size());
            (void)inserted;
            next_block[s] = it->second;
        }
        if (next_ids.size() == n_blocks) break;
        n_blocks = next_ids.size();
        block = std::move(next_block);
    }

    // One representative per block; traverse blocks breadth-first.
    std::vector<StateId> rep(n_blocks, static_cast<StateId>(-1));
    for (StateId s = 0; s < n; ++s) {
        if (rep[block[s]] == static_cast<StateId>(-1)) rep[block[s]] = s;
    }
    std::vector<StateId> new_of_block(n_blocks, static_cast<StateId>(-1));
    std::vector<std::size_t> order;
    std::deque<std::size_t> queue;
    auto visit = [&](std::size_t blk) {
        if (new_of_block[blk] != static_cast<StateId>(-1)) return;
        new_of_block[blk] = order.size();
        order.push_back(blk);
        queue.push_back(blk);
    };
    visit(block[det.initial()]);
    while (!queue.empty()) {
        std::size_t blk = queue.front();
        queue.pop_front();
        for (EventId e = 0; e < n_events; ++e) {
            const auto& t = det.targets(rep[blk], e);
            if (!t.empty()) visit(block[t.front()]);
        }
    }

    std::vector<std::string> names;
    std::vector<bool> marked;
    std::vector<Transition> trans;
    for (std::size_t i = 0; i < order.size(); ++i) {
        names.push_back("s" + std::to_string(i));
        marked.push_back(det.marked(rep[order[i]]));
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        StateId r = rep[order[i]];
        for (EventId e = 0; e < n_events; ++e) {
            const auto& t = det.targets(r, e);
            if (!t.empty()) trans.push_back({i, e, new_of_block[block[t.front()]]});
        }
    }
    return DetAutomaton(
        Automaton(det.alphabet(), std::move(names), 0, std::move(marked), trans));
}

} // namespace

DetAutomaton determinize(const Automaton& a, const RunLimits& limits) {
    using Macro = std::vector<StateId>;
    std::map<Macro, StateId> ids;
    std::vector<Macro> macros;
    std::vector<Transition> trans;
    std::deque<StateId> queue;
    auto state_of = [&](Macro macro) {
        auto [it, inserted] = ids.emplace(std::move(macro), macros.size());
        if (inserted) {
            limits.check_states(macros.size() + 1);
            macros.push_back(it->first);
            queue.push_back(it->second);
        }
        return it->second;
    };
    state_of(Macro{a.initial()});
    while (!queue.empty()) {
        limits.check_cancel();
        StateId s = queue.front();
        queue.pop_front();
        for (EventId e = 0; e < a.alphabet().size(); ++e) {
            std::set<StateId> next;
            for (StateId x : macros[s]) {
                const auto& t = a.targets(x, e);
                next.insert(t.begin(), t.end());
            }
            if (next.empty()) continue;
            trans.push_back({s, e, state_of(Macro(next.begin(), next.end()))});
        }
    }

    std::vector<std::string> names;
    std::vector<bool> marked;
    for (StateId s = 0; s < macros.size(); ++s) {
        names.push_back("m" + std::to_string(s));
        bool m = false;
        for (StateId x : macros[s]) m = m || a.marked(x);
        marked.push_back(m);
    }
    Automaton subset(a.alphabet(), std::move(names), 0, std::move(marked), trans);
    return minimize_canonical(subset);
}

Automaton uncontrollable_augment(const Automaton& a) {
    const StateId dump = a.num_states();
    std::vector<std::string> names = a.state_names();
    names.push_back(detail::fresh_name(names, "__Dd"));
    std::vector<bool> marked = a.marked_flags();
    marked.push_back(false);

    std::vector<Transition> trans = a.transitions();
    const auto unctrl = a.alphabet().uncontrollable_events();
    for (StateId s = 0; s < a.num_states(); ++s) {
        for (EventId e : unctrl) {
            if (!a.enables(s, e)) trans.push_back({s, e, dump});
        }
    }
    for (EventId e : unctrl) trans.push_back({dump, e, dump});

    Automaton out(a.alphabet(), std::move(names), a.initial(), std::move(marked), trans);
    assert(detail::all_uncontrollable_enabled(out));
    return out;
}

Automaton reindex_events(const Automaton& a, const EventAlphabet& target) {
    if (!a.alphabet().same_partition(target)) {
        throw AlphabetMismatch("reindex_events: target alphabet differs");
    }
    std::vector<EventId> map(a.alphabet().size());
    for (EventId e = 0; e < a.alphabet().size(); ++e) {
        map[e] = *target.find(a.alphabet().name(e));
    }
    std::vector<Transition> trans;
    trans.reserve(a.num_transitions());
    for (const auto& t : a.transitions()) trans.push_back({t.src, map[t.event], t.dst});
    return Automaton(target, a.state_names(), a.initial(), a.marked_flags(), trans);
}

} // namespace descs
