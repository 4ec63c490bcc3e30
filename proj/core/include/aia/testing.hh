#ifndef AIA_TESTING_HH_
#define AIA_TESTING_HH_

/** \file
 * \brief
 * Testers derived from specifications, their synchronous execution against
 * implementation IAs, and singular specifications whose testers are finite
 * test cases.
 *
 * A tester is an interface automaton over the swapped alphabets: it receives
 * the implementation's outputs and emits the implementation's inputs together
 * with one refusal observation `~a` per input `a`.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aia/aia.hh"
#include "aia/ia.hh"

namespace aia {

class Tester {
public:
    /**
     * Wraps an IA as a tester. Its outputs must be the spec inputs plus their
     * `~` refusal names, its inputs the spec outputs, and it must hold states
     * named `pass` and `fail`. Throws ModelError if the tester invariants fail.
     */
    static Tester from_ia(InterfaceAutomaton automaton);

    const InterfaceAutomaton& automaton() const { return automaton_; }
    /// Alphabet of the specification and of implementations under test.
    const Alphabet& spec_alphabet() const { return spec_alphabet_; }

    StateId pass() const { return pass_; }
    StateId fail() const { return fail_; }
    bool is_verdict(StateId q) const { return q == pass_ || q == fail_; }
    StateId initial() const { return automaton_.initial().front(); }

    /// Tester label carrying spec label `l`.
    LabelId label_for(LabelId l) const { return label_map_[l]; }
    /// Tester label carrying the refusal of spec input `a`.
    LabelId refusal_for(LabelId a) const { return refusal_map_[a]; }

    /// Tester successor on spec label `l`, if any.
    std::optional<StateId> next(StateId q, LabelId l) const;
    /// Tester successor on the refusal of spec input `a`, if any.
    std::optional<StateId> next_refusal(StateId q, LabelId a) const;

private:
    Tester() = default;

    InterfaceAutomaton automaton_;
    Alphabet spec_alphabet_;
    StateId pass_ = 0;
    StateId fail_ = 0;
    std::vector<LabelId> label_map_;
    std::vector<LabelId> refusal_map_;
};

/// Name of the tester refusal label for spec input `a`.
std::string refusal_name(const std::string& input);

/**
 * Tester over the reachable configurations of `s`. Inputs that lead to top
 * are not offered; refusing an offered input leads to fail.
 */
Tester build_tester(const AlternatingIA& s, const ExplorationLimits& limits = {});

/// Throws ModelError naming the first violated tester invariant.
void check_tester(const Tester& t);

/// Reachable part of the synchronous execution of `impl` against `t`.
struct ExecutionProduct {
    /// No inputs; its outputs are the spec labels and the refusal observations.
    InterfaceAutomaton automaton;
    /// (tester state, implementation state) of each product state.
    std::vector<std::pair<StateId, StateId>> pairs;
    /// What each product label observes, in spec-alphabet terms.
    std::vector<Observation> observations;
};

/// Throws PreconditionError for an empty implementation, AlphabetError on mismatch.
ExecutionProduct execute_product(const Tester& t, const InterfaceAutomaton& impl,
                                 const ExplorationLimits& limits = {});

enum class Outcome { Pass, Fail };

struct LogEntry {
    std::size_t step;
    Observation observation;
    StateId tester_state;
    StateId impl_state;
};

struct Verdict {
    Outcome outcome = Outcome::Pass;
    /// For Fail: the observations leading to fail (shortest for exhaustive runs).
    std::vector<Observation> witness;
    /// Random runs only.
    std::vector<LogEntry> log;
    /// A random run stopped in a non-verdict state without enabled moves.
    bool inconclusive = false;
    std::size_t explored_states = 0;

    bool failed() const { return outcome == Outcome::Fail; }
};

/// Fail iff a product state with tester component fail is reachable.
Verdict verdict_exhaustive(const Tester& t, const InterfaceAutomaton& impl,
                           const ExplorationLimits& limits = {});

/**
 * One random walk through the execution. Enabled moves are drawn uniformly,
 * then the implementation successor, using a Mersenne Twister seeded with
 * splitmix64(seed). Stops at a verdict state, when nothing is enabled, or
 * after `max_steps` steps.
 */
Verdict run_random(const Tester& t, const InterfaceAutomaton& impl, std::uint64_t seed,
                   std::size_t max_steps);

/// `PASS` or `FAIL <witness>`, followed by `<step> <label> <tester-state> <impl-state>` lines.
std::string format_verdict(const Tester& t, const InterfaceAutomaton& impl, const Verdict& v,
                           bool with_log);

/// Every state offers at most one stimulus (a together with ~a) and no cycle avoids pass/fail.
bool is_test_case(const Tester& t);

/// Tree-shaped weakening of a specification. Node k stands for trace `node_traces[k]`.
struct SingularSpec {
    AlternatingIA automaton;
    std::vector<Word> node_traces;
};

struct SingularOptions {
    std::uint64_t seed = 0;
    std::size_t max_depth = 8;
    double p_stop = 0.1;
};

/**
 * Random singular specification for `s`. At each node one input with a
 * non-top successor may be kept (or none, uniformly among those choices);
 * outputs keep their bottom/top verdicts and other successors continue unless
 * truncated to top with probability `p_stop` or at `max_depth`.
 */
SingularSpec gen_singular(const AlternatingIA& s, const SingularOptions& options,
                          const ExplorationLimits& limits = {});

/**
 * The linear singular specification excluding `trace`, which must not be an
 * Ftrace of `s` (PreconditionError otherwise). The trace is first cut to its
 * shortest prefix outside Ftraces(s).
 */
SingularSpec singular_from_trace(const AlternatingIA& s, const FTrace& trace);

/**
 * Checks the singular-specification conditions: `s2` is a tree rooted at its
 * initial state (or has a top/bottom initial configuration) and every edge
 * respects the bottom/top verdicts of `s1` along the corresponding trace.
 */
bool is_singular_for(const AlternatingIA& s2, const AlternatingIA& s1);

/// Name used for the node of a singular specification reached by `w`.
std::string trace_node_name(const Alphabet& alphabet, const Word& w);

} // namespace aia

#endif // AIA_TESTING_HH_
