#ifndef AIA_LATTICE_HH_
#define AIA_LATTICE_HH_

/** \file
 * \brief
 * Elements of the free distributive lattice over a set of states.
 *
 * A configuration is stored as its irredundant disjunctive normal form: an
 * antichain of clauses, each clause being a set of states read as their
 * conjunction. The empty antichain is bottom and the antichain holding only
 * the empty clause is top. Because the representation is canonical, lattice
 * equality is plain structural equality.
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace aia {

using StateId = std::uint32_t;

/// Sorted, duplicate-free set of states read as a conjunction.
using Clause = std::vector<StateId>;

enum class ConfigKind { Top, Bot, SingleState, Compound };

class Config {
public:
    /// Bottom.
    Config() = default;

    static Config top();
    static Config bot() { return Config{}; }
    static Config embed(StateId q);

    /**
     * Builds a configuration from arbitrary clauses. Clauses are sorted and
     * deduplicated and every clause subsumed by a smaller one is dropped.
     */
    static Config from_clauses(std::vector<Clause> clauses);

    /// Disjunction of the given states, bottom for an empty list.
    static Config any_of(std::span<const StateId> states);
    /// Conjunction of the given states, top for an empty list.
    static Config all_of(std::span<const StateId> states);

    const std::vector<Clause>& clauses() const { return clauses_; }

    bool is_top() const { return clauses_.size() == 1 && clauses_.front().empty(); }
    bool is_bot() const { return clauses_.empty(); }

    ConfigKind kind() const;
    /// The state of a SingleState configuration. Undefined for other kinds.
    StateId single_state() const { return clauses_.front().front(); }

    /// Largest state id mentioned plus one, 0 for top and bottom.
    StateId state_bound() const;

    friend bool operator==(const Config&, const Config&) = default;
    friend auto operator<=>(const Config&, const Config&) = default;

private:
    explicit Config(std::vector<Clause> canonical) : clauses_(std::move(canonical)) {}

    friend Config join(const Config&, const Config&);
    friend Config meet(const Config&, const Config&);

    std::vector<Clause> clauses_;
};

Config join(const Config& a, const Config& b);
Config meet(const Config& a, const Config& b);
Config join_all(std::span<const Config> items);
Config meet_all(std::span<const Config> items);

ConfigKind classify(const Config& e);

/// The clause set of `e`; the identity on the canonical representation.
inline const std::vector<Clause>& dnf(const Config& e) { return e.clauses(); }

/// True if no clause of `e` contains another.
bool is_antichain(const std::vector<Clause>& clauses);

/**
 * Replaces every state q in `e` by `f(q)`. `f` must be defined on all states
 * occurring in `e`; it may return `Config` by value or by const reference.
 */
template <typename F>
Config substitute(const Config& e, F&& f) {
    if (e.is_top() || e.is_bot()) {
        return e;
    }
    Config result = Config::bot();
    for (const Clause& clause : e.clauses()) {
        Config conj = Config::top();
        for (StateId q : clause) {
            conj = meet(conj, f(q));
            if (conj.is_bot()) {
                break;
            }
        }
        result = join(result, conj);
        if (result.is_top()) {
            break;
        }
    }
    return result;
}

/**
 * Prints `e` as an expression of the configuration grammar: `T`, `F`, or
 * clauses joined by `|` whose states are joined by `&`.
 */
std::string to_string(const Config& e, const std::function<std::string(StateId)>& name);
std::string to_string(const Config& e, std::span<const std::string> names);

struct ConfigHash {
    std::size_t operator()(const Config& e) const noexcept;
};

using ConfigId = std::uint32_t;

/**
 * Session-scoped interning table. Each distinct configuration gets a dense
 * id on first insertion; ids stay valid for the lifetime of the pool.
 */
class ConfigPool {
public:
    /// Returns the id of `e` and whether it was newly inserted.
    std::pair<ConfigId, bool> intern(const Config& e);
    /// Id of an already interned configuration, or -1 when absent.
    std::int64_t find(const Config& e) const;

    const Config& at(ConfigId id) const { return items_.at(id); }
    std::size_t size() const { return items_.size(); }

private:
    std::unordered_map<Config, ConfigId, ConfigHash> index_;
    std::vector<Config> items_;
};

} // namespace aia

#endif // AIA_LATTICE_HH_
