#include "aia/aia.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace aia {

AlternatingIA::AlternatingIA(Alphabet alphabet, std::vector<std::string> state_names,
                             std::string name)
    : name_(std::move(name)), alphabet_(std::move(alphabet)) {
    for (std::string& n : state_names) {
        add_state(std::move(n));
    }
}

std::optional<StateId> AlternatingIA::find_state(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

StateId AlternatingIA::add_state(std::string name) {
    const auto id = static_cast<StateId>(state_names_.size());
    if (!state_index_.try_emplace(name, id).second) {
        throw ModelError("duplicate state '" + name + "'");
    }
    state_names_.push_back(std::move(name));
    for (LabelId l = 0; l < alphabet_.size(); ++l) {
        transitions_.push_back(alphabet_.is_input(l) ? Config::top() : Config::bot());
    }
    return id;
}

void AlternatingIA::check_config(const Config& e) const {
    if (e.state_bound() > num_states()) {
        throw ModelError("configuration refers to undeclared state id " +
                         std::to_string(e.state_bound() - 1));
    }
}

void AlternatingIA::set_transition(StateId from, LabelId label, Config target) {
    if (from >= num_states()) {
        throw ModelError("state id " + std::to_string(from) + " is not declared");
    }
    alphabet_.check(label);
    check_config(target);
    if (alphabet_.is_input(label) && target.is_bot()) {
        throw ModelError("input " + alphabet_.decorated(label) + " of state '" + state_names_[from] +
                         "' maps to F");
    }
    transitions_[from * alphabet_.size() + label] = std::move(target);
}

void AlternatingIA::set_initial(Config initial) {
    check_config(initial);
    initial_ = std::move(initial);
}

void AlternatingIA::validate() const {
    check_config(initial_);
    for (StateId q = 0; q < num_states(); ++q) {
        for (LabelId l = 0; l < alphabet_.size(); ++l) {
            const Config& e = transition(q, l);
            check_config(e);
            if (alphabet_.is_input(l) && e.is_bot()) {
                throw ModelError("input " + alphabet_.decorated(l) + " of state '" + state_names_[q] +
                                 "' maps to F");
            }
        }
    }
}

Config after(const AlternatingIA& s, const Config& e, LabelId label) {
    s.alphabet().check(label);
    return substitute(e, [&](StateId q) -> const Config& { return s.transition(q, label); });
}

Config after(const AlternatingIA& s, const Config& e, const Word& word) {
    s.alphabet().check(word);
    Config current = e;
    for (LabelId l : word) {
        if (current.is_top() || current.is_bot()) {
            break;
        }
        current = substitute(current, [&](StateId q) -> const Config& { return s.transition(q, l); });
    }
    return current;
}

Config after(const AlternatingIA& s, const Word& word) { return after(s, s.initial(), word); }

bool ftrace_member(const AlternatingIA& s, const Config& e, const FTrace& trace) {
    check_ftrace(s.alphabet(), trace);
    const Config reached = after(s, e, trace.body);
    if (!trace.failure) {
        return !reached.is_bot();
    }
    return after(s, reached, *trace.failure).is_top();
}

bool ftrace_member(const AlternatingIA& s, const FTrace& trace) {
    return ftrace_member(s, s.initial(), trace);
}

TraceQuery query(const AlternatingIA& s, const Word& word) {
    Config reached = after(s, word);
    TraceStatus status = reached.is_bot()   ? TraceStatus::Forbidden
                         : reached.is_top() ? TraceStatus::Underspecified
                                            : TraceStatus::Allowed;
    return {status, std::move(reached)};
}

const char* to_string(TraceStatus status) {
    switch (status) {
    case TraceStatus::Allowed:
        return "Allowed";
    case TraceStatus::Forbidden:
        return "Forbidden";
    case TraceStatus::Underspecified:
        return "Underspecified";
    }
    return "?";
}

namespace {

Config shift(const Config& e, StateId offset) {
    std::vector<Clause> clauses = e.clauses();
    for (Clause& c : clauses) {
        for (StateId& q : c) {
            q += offset;
        }
    }
    return Config::from_clauses(std::move(clauses));
}

// Disjoint union of the two state spaces. The second automaton's states are
// shifted past the first's.
AlternatingIA disjoint_union(const AlternatingIA& s1, const AlternatingIA& s2, std::string name) {
    require_same_alphabet(s1.alphabet(), s2.alphabet(), "composition");
    bool collision = false;
    for (const std::string& n : s2.state_names()) {
        if (s1.find_state(n)) {
            collision = true;
            break;
        }
    }
    std::vector<std::string> names;
    names.reserve(s1.num_states() + s2.num_states());
    for (const std::string& n : s1.state_names()) {
        names.push_back(collision ? n + "#1" : n);
    }
    for (const std::string& n : s2.state_names()) {
        names.push_back(collision ? n + "#2" : n);
    }
    AlternatingIA result(s1.alphabet(), std::move(names), std::move(name));
    const auto offset = static_cast<StateId>(s1.num_states());
    for (StateId q = 0; q < s1.num_states(); ++q) {
        for (LabelId l = 0; l < s1.alphabet().size(); ++l) {
            result.set_transition(q, l, s1.transition(q, l));
        }
    }
    for (StateId q = 0; q < s2.num_states(); ++q) {
        for (LabelId l = 0; l < s2.alphabet().size(); ++l) {
            result.set_transition(q + offset, l, shift(s2.transition(q, l), offset));
        }
    }
    return result;
}

} // namespace

AlternatingIA conj(const AlternatingIA& s1, const AlternatingIA& s2) {
    AlternatingIA result = disjoint_union(s1, s2, "(" + s1.name() + " & " + s2.name() + ")");
    result.set_initial(meet(s1.initial(), shift(s2.initial(), static_cast<StateId>(s1.num_states()))));
    return result;
}

AlternatingIA disj(const AlternatingIA& s1, const AlternatingIA& s2) {
    AlternatingIA result = disjoint_union(s1, s2, "(" + s1.name() + " | " + s2.name() + ")");
    result.set_initial(join(s1.initial(), shift(s2.initial(), static_cast<StateId>(s1.num_states()))));
    return result;
}

AlternatingIA aia_top(const Alphabet& alphabet) {
    AlternatingIA s(alphabet, {}, "top");
    s.set_initial(Config::top());
    return s;
}

AlternatingIA aia_bot(const Alphabet& alphabet) {
    AlternatingIA s(alphabet, {}, "bot");
    s.set_initial(Config::bot());
    return s;
}

AlternatingIA induce_aia(const InterfaceAutomaton& i) {
    AlternatingIA s(i.alphabet(), i.state_names(), i.name());
    for (StateId q = 0; q < i.num_states(); ++q) {
        for (LabelId l = 0; l < i.alphabet().size(); ++l) {
            const StateSet& succ = i.successors(q, l);
            if (i.alphabet().is_input(l) && succ.empty()) {
                s.set_transition(q, l, Config::top());
            } else {
                s.set_transition(q, l, Config::any_of(succ));
            }
        }
    }
    s.set_initial(Config::any_of(i.initial()));
    return s;
}

InterfaceAutomaton induce_ia(const AlternatingIA& s, const ExplorationLimits& limits) {
    const Alphabet& alph = s.alphabet();
    InterfaceAutomaton result(alph, {}, s.name());
    std::map<Clause, StateId> ids;
    std::vector<Clause> clauses;
    std::deque<StateId> work;

    auto clause_name = [&](const Clause& c) {
        std::string n = "{";
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k > 0) {
                n += ", ";
            }
            n += s.state_name(c[k]);
        }
        return n + "}";
    };
    auto intern = [&](const Clause& c) {
        auto it = ids.find(c);
        if (it != ids.end()) {
            return it->second;
        }
        if (ids.size() >= limits.max_configs) {
            throw ResourceError("induced IA construction", limits.max_configs);
        }
        const StateId id = result.add_state(clause_name(c));
        ids.emplace(c, id);
        clauses.push_back(c);
        work.push_back(id);
        return id;
    };

    StateSet initial;
    for (const Clause& c : dnf(s.initial())) {
        initial.push_back(intern(c));
    }
    result.set_initial(std::move(initial));

    while (!work.empty()) {
        const StateId from = work.front();
        work.pop_front();
        const Config conjunction = Config::all_of(clauses[from]);
        for (LabelId l = 0; l < alph.size(); ++l) {
            const Config next = after(s, conjunction, l);
            for (const Clause& c : dnf(next)) {
                if (alph.is_input(l) && c.empty()) {
                    continue;
                }
                result.add_transition(from, l, intern(c));
            }
        }
    }
    return result;
}

} // namespace aia
