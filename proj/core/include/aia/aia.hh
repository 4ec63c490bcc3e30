#ifndef AIA_AIA_HH_
#define AIA_AIA_HH_

/** \file
 * \brief
 * Alternating interface automata: transitions map to configurations of the
 * free distributive lattice over the states, so that disjunction models
 * nondeterminism and conjunction models simultaneous views.
 */

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aia/alphabet.hh"
#include "aia/error.hh"
#include "aia/ia.hh"
#include "aia/lattice.hh"

namespace aia {

class AlternatingIA {
public:
    AlternatingIA() = default;
    /**
     * New automaton whose input transitions all map to top and whose output
     * transitions all map to bottom; the initial configuration is bottom.
     */
    AlternatingIA(Alphabet alphabet, std::vector<std::string> state_names, std::string name = "");

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t num_states() const { return state_names_.size(); }
    const std::vector<std::string>& state_names() const { return state_names_; }
    const std::string& state_name(StateId q) const { return state_names_.at(q); }
    std::optional<StateId> find_state(std::string_view name) const;

    StateId add_state(std::string name);

    /// Throws ModelError for an input mapped to bottom or an undeclared state in `target`.
    void set_transition(StateId from, LabelId label, Config target);
    const Config& transition(StateId q, LabelId label) const {
        return transitions_[q * alphabet_.size() + label];
    }

    void set_initial(Config initial);
    const Config& initial() const { return initial_; }

    /// Checks every invariant; throws ModelError on the first violation.
    void validate() const;

    /// Canonical printed form of a configuration using this automaton's state names.
    std::string format(const Config& e) const { return to_string(e, state_names_); }

    friend bool operator==(const AlternatingIA&, const AlternatingIA&) = default;

private:
    void check_config(const Config& e) const;

    std::string name_;
    Alphabet alphabet_;
    std::vector<std::string> state_names_;
    std::unordered_map<std::string, StateId> state_index_;
    std::vector<Config> transitions_;
    Config initial_;
};

/// One step: substitute every state q of `e` by T(q, label).
Config after(const AlternatingIA& s, const Config& e, LabelId label);
/// Left fold of single steps; `after(s, e, {})` is `e`.
Config after(const AlternatingIA& s, const Config& e, const Word& word);
/// From the initial configuration.
Config after(const AlternatingIA& s, const Word& word);

/// Membership of `trace` in the Ftraces of configuration `e`.
bool ftrace_member(const AlternatingIA& s, const Config& e, const FTrace& trace);
/// Membership of `trace` in the Ftraces of the initial configuration.
bool ftrace_member(const AlternatingIA& s, const FTrace& trace);

enum class TraceStatus { Allowed, Forbidden, Underspecified };

struct TraceQuery {
    TraceStatus status;
    Config config;
};

/// Forbidden iff the word reaches bottom, Underspecified iff it reaches top.
TraceQuery query(const AlternatingIA& s, const Word& word);

const char* to_string(TraceStatus status);

/// Both automata share the alphabet; states are renamed with `#1`/`#2` on name collisions.
AlternatingIA conj(const AlternatingIA& s1, const AlternatingIA& s2);
AlternatingIA disj(const AlternatingIA& s1, const AlternatingIA& s2);
AlternatingIA aia_top(const Alphabet& alphabet);
AlternatingIA aia_bot(const Alphabet& alphabet);

/// Inputs without successors map to top, everything else to the join of the successors.
AlternatingIA induce_aia(const InterfaceAutomaton& i);

/**
 * Interface automaton whose states are the clauses reachable from the DNF of
 * the initial configuration. The empty clause is the chaotic state.
 */
InterfaceAutomaton induce_ia(const AlternatingIA& s, const ExplorationLimits& limits = {});

} // namespace aia

#endif // AIA_AIA_HH_
