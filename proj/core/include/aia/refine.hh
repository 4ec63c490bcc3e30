#ifndef AIA_REFINE_HH_
#define AIA_REFINE_HH_

/** \file
 * \brief
 * Decision procedure for input-failure refinement.
 *
 * Both sides are explored in lockstep as deterministic systems over canonical
 * configurations. A pair (e1, e2) reached by a word w witnesses a violation if
 * e1 is not bottom but e2 is (w itself is the counterexample), or if some
 * input a leads e1 to top but not e2 (then w followed by the refusal of a is).
 * Pairs are visited breadth-first, so counterexamples have minimal length;
 * ties go to the smaller label, a refusal of a before a itself.
 */

#include <cstddef>
#include <optional>

#include "aia/aia.hh"
#include "aia/ia.hh"

namespace aia {

struct RefinementResult {
    bool holds = true;
    /// Present iff `holds` is false.
    std::optional<FTrace> counterexample;
    /// Number of distinct configuration pairs visited.
    std::size_t explored_pairs = 0;

    explicit operator bool() const { return holds; }
};

RefinementResult leq_aia(const AlternatingIA& left, const AlternatingIA& right,
                         const ExplorationLimits& limits = {});

/// The counterexample is a member of the Ftraces of `impl` itself.
RefinementResult leq_ia_aia(const InterfaceAutomaton& impl, const AlternatingIA& spec,
                            const ExplorationLimits& limits = {});

/// Ftraces(left) against the input-failure closure of Ftraces(right).
RefinementResult leq_ia(const InterfaceAutomaton& left, const InterfaceAutomaton& right,
                        const ExplorationLimits& limits = {});

/// Ftraces(left) against the input-failure closure of Ftraces(right).
RefinementResult leq_aia_ia(const AlternatingIA& left, const InterfaceAutomaton& right,
                            const ExplorationLimits& limits = {});

bool equiv(const AlternatingIA& s1, const AlternatingIA& s2, const ExplorationLimits& limits = {});

} // namespace aia

#endif // AIA_REFINE_HH_
