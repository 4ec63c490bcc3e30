#include "aia/ia.hh"

#include <algorithm>
#include <deque>
#include <set>

namespace aia {

InterfaceAutomaton::InterfaceAutomaton(Alphabet alphabet, std::vector<std::string> state_names,
                                       std::string name)
    : name_(std::move(name)), alphabet_(std::move(alphabet)) {
    for (std::string& n : state_names) {
        add_state(std::move(n));
    }
}

std::optional<StateId> InterfaceAutomaton::find_state(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

StateId InterfaceAutomaton::add_state(std::string name) {
    const auto id = static_cast<StateId>(state_names_.size());
    if (!state_index_.try_emplace(name, id).second) {
        throw ModelError("duplicate state '" + name + "'");
    }
    state_names_.push_back(std::move(name));
    transitions_.resize(state_names_.size() * alphabet_.size());
    return id;
}

void InterfaceAutomaton::check_state(StateId q) const {
    if (q >= num_states()) {
        throw ModelError("state id " + std::to_string(q) + " is not declared");
    }
}

void InterfaceAutomaton::add_transition(StateId from, LabelId label, StateId to) {
    check_state(from);
    check_state(to);
    alphabet_.check(label);
    StateSet& succ = transitions_[from * alphabet_.size() + label];
    auto it = std::lower_bound(succ.begin(), succ.end(), to);
    if (it == succ.end() || *it != to) {
        succ.insert(it, to);
    }
}

void InterfaceAutomaton::set_successors(StateId from, LabelId label, StateSet targets) {
    check_state(from);
    alphabet_.check(label);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (StateId q : targets) {
        check_state(q);
    }
    transitions_[from * alphabet_.size() + label] = std::move(targets);
}

void InterfaceAutomaton::set_initial(StateSet initial) {
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    for (StateId q : initial) {
        check_state(q);
    }
    initial_ = std::move(initial);
}

namespace {

StateSet step(const InterfaceAutomaton& s, const StateSet& from, LabelId label) {
    StateSet next;
    for (StateId q : from) {
        const StateSet& succ = s.successors(q, label);
        next.insert(next.end(), succ.begin(), succ.end());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return next;
}

} // namespace

StateSet after_set(const InterfaceAutomaton& s, const StateSet& from, const Word& word) {
    s.alphabet().check(word);
    StateSet current = from;
    for (LabelId l : word) {
        if (current.empty()) {
            break;
        }
        current = step(s, current, l);
    }
    return current;
}

StateSet after_set(const InterfaceAutomaton& s, const Word& word) {
    return after_set(s, s.initial(), word);
}

std::vector<LabelId> out_set(const InterfaceAutomaton& s, const StateSet& states) {
    std::vector<LabelId> out;
    const Alphabet& alph = s.alphabet();
    for (auto x = static_cast<LabelId>(alph.num_inputs()); x < alph.size(); ++x) {
        if (std::any_of(states.begin(), states.end(),
                        [&](StateId q) { return !s.successors(q, x).empty(); })) {
            out.push_back(x);
        }
    }
    return out;
}

std::vector<LabelId> in_set(const InterfaceAutomaton& s, const StateSet& states) {
    std::vector<LabelId> in;
    const Alphabet& alph = s.alphabet();
    for (LabelId a = 0; a < alph.num_inputs(); ++a) {
        if (std::all_of(states.begin(), states.end(),
                        [&](StateId q) { return !s.successors(q, a).empty(); })) {
            in.push_back(a);
        }
    }
    return in;
}

StateFlags classify_state(const InterfaceAutomaton& s, StateId q) {
    StateFlags flags;
    flags.is_sink = true;
    for (LabelId l = 0; l < s.alphabet().size(); ++l) {
        const StateSet& succ = s.successors(q, l);
        if (succ.size() > 1 || (succ.size() == 1 && succ.front() != q)) {
            flags.is_sink = false;
        }
    }
    flags.input_enabled = in_set(s, {q}).size() == s.alphabet().num_inputs();
    return flags;
}

bool is_deterministic(const InterfaceAutomaton& s) {
    if (s.initial().size() > 1) {
        return false;
    }
    std::set<StateSet> visited{s.initial()};
    std::deque<StateSet> work{s.initial()};
    while (!work.empty()) {
        StateSet current = std::move(work.front());
        work.pop_front();
        for (LabelId l = 0; l < s.alphabet().size(); ++l) {
            StateSet next = step(s, current, l);
            if (next.size() > 1) {
                return false;
            }
            if (!next.empty() && visited.insert(next).second) {
                work.push_back(std::move(next));
            }
        }
    }
    return true;
}

IaFlags classify_ia(const InterfaceAutomaton& s) {
    IaFlags flags;
    flags.empty = s.is_empty();
    flags.deterministic = is_deterministic(s);
    flags.input_enabled = true;
    for (StateId q = 0; q < s.num_states(); ++q) {
        if (!classify_state(s, q).input_enabled) {
            flags.input_enabled = false;
            break;
        }
    }
    return flags;
}

bool ftrace_member(const InterfaceAutomaton& s, const FTrace& trace) {
    check_ftrace(s.alphabet(), trace);
    const StateSet reached = after_set(s, trace.body);
    if (reached.empty()) {
        return false;
    }
    if (!trace.failure) {
        return true;
    }
    const LabelId a = *trace.failure;
    return std::any_of(reached.begin(), reached.end(),
                       [&](StateId q) { return s.successors(q, a).empty(); });
}

bool fcl_member(const InterfaceAutomaton& s, const FTrace& trace) {
    check_ftrace(s.alphabet(), trace);
    // Walk the body once, checking at each input position whether the prefix
    // before it may refuse that input.
    StateSet current = s.initial();
    for (LabelId l : trace.body) {
        if (current.empty()) {
            return false;
        }
        if (s.alphabet().is_input(l) &&
            std::any_of(current.begin(), current.end(),
                        [&](StateId q) { return s.successors(q, l).empty(); })) {
            return true;
        }
        current = step(s, current, l);
    }
    if (current.empty()) {
        return false;
    }
    if (!trace.failure) {
        return true;
    }
    const LabelId a = *trace.failure;
    return std::any_of(current.begin(), current.end(),
                       [&](StateId q) { return s.successors(q, a).empty(); });
}

} // namespace aia
