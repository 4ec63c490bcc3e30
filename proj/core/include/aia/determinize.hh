#ifndef AIA_DETERMINIZE_HH_
#define AIA_DETERMINIZE_HH_

#include <vector>

#include "aia/aia.hh"

namespace aia {

/**
 * Result of determinizing an AIA. State k of `automaton` stands for the
 * configuration `configs[k]` of the source automaton, which is never top or
 * bottom; its name is the printed configuration.
 */
struct Determinization {
    AlternatingIA automaton;
    std::vector<Config> configs;
};

/// Materializes the configurations reachable from the initial one.
Determinization determinize(const AlternatingIA& s, const ExplorationLimits& limits = {});

inline AlternatingIA det(const AlternatingIA& s, const ExplorationLimits& limits = {}) {
    return determinize(s, limits).automaton;
}

/// True iff every reachable configuration is top, bottom or a single state.
bool check_deterministic(const AlternatingIA& s, const ExplorationLimits& limits = {});

} // namespace aia

#endif // AIA_DETERMINIZE_HH_
