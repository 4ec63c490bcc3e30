#ifndef AIA_IA_HH_
#define AIA_IA_HH_

/** \file
 * \brief
 * Interface automata: set-valued transitions over disjoint input and output
 * alphabets, with the after/in/out notation and input-failure traces.
 */

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aia/alphabet.hh"
#include "aia/error.hh"
#include "aia/lattice.hh"

namespace aia {

/// Sorted, duplicate-free set of states.
using StateSet = std::vector<StateId>;

class InterfaceAutomaton {
public:
    InterfaceAutomaton() = default;
    InterfaceAutomaton(Alphabet alphabet, std::vector<std::string> state_names,
                       std::string name = "");

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t num_states() const { return state_names_.size(); }
    const std::vector<std::string>& state_names() const { return state_names_; }
    const std::string& state_name(StateId q) const { return state_names_.at(q); }
    std::optional<StateId> find_state(std::string_view name) const;

    /// Appends a state; throws ModelError on a duplicate name.
    StateId add_state(std::string name);

    void add_transition(StateId from, LabelId label, StateId to);
    /// Replaces all `label`-successors of `from`.
    void set_successors(StateId from, LabelId label, StateSet targets);
    const StateSet& successors(StateId q, LabelId label) const {
        return transitions_[q * alphabet_.size() + label];
    }

    void set_initial(StateSet initial);
    const StateSet& initial() const { return initial_; }

    bool is_empty() const { return initial_.empty(); }

    friend bool operator==(const InterfaceAutomaton&, const InterfaceAutomaton&) = default;

private:
    void check_state(StateId q) const;

    std::string name_;
    Alphabet alphabet_;
    std::vector<std::string> state_names_;
    std::unordered_map<std::string, StateId> state_index_;
    std::vector<StateSet> transitions_;
    StateSet initial_;
};

/// States reachable from `from` by `word`; empty iff `word` is not a trace of `from`.
StateSet after_set(const InterfaceAutomaton& s, const StateSet& from, const Word& word);
StateSet after_set(const InterfaceAutomaton& s, const Word& word);

/// Outputs enabled in some state of `states`.
std::vector<LabelId> out_set(const InterfaceAutomaton& s, const StateSet& states);
/// Inputs enabled in every state of `states`; all inputs for the empty set.
std::vector<LabelId> in_set(const InterfaceAutomaton& s, const StateSet& states);

struct StateFlags {
    bool is_sink = false;
    bool input_enabled = false;
};

struct IaFlags {
    bool deterministic = false;
    bool input_enabled = false;
    bool empty = false;
};

StateFlags classify_state(const InterfaceAutomaton& s, StateId q);
/// Determinism is decided by subset construction over the reachable after-sets.
IaFlags classify_ia(const InterfaceAutomaton& s);
bool is_deterministic(const InterfaceAutomaton& s);

bool ftrace_member(const InterfaceAutomaton& s, const FTrace& trace);
/// Membership in the input-failure closure of the Ftraces of `s`.
bool fcl_member(const InterfaceAutomaton& s, const FTrace& trace);

} // namespace aia

#endif // AIA_IA_HH_
