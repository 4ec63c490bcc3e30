#include "aia/lattice.hh"

#include <algorithm>
#include <cassert>

namespace aia {

namespace {

// Drops duplicates and clauses that strictly contain another clause, then
// sorts lexicographically.
std::vector<Clause> minimize(std::vector<Clause> clauses) {
    std::sort(clauses.begin(), clauses.end(), [](const Clause& a, const Clause& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<Clause> kept;
    kept.reserve(clauses.size());
    for (Clause& c : clauses) {
        const bool subsumed = std::any_of(kept.begin(), kept.end(), [&](const Clause& k) {
            return std::includes(c.begin(), c.end(), k.begin(), k.end());
        });
        if (!subsumed) {
            kept.push_back(std::move(c));
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

void normalize_clause(Clause& c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
}

} // namespace

Config Config::top() { return Config{std::vector<Clause>{Clause{}}}; }

Config Config::embed(StateId q) { return Config{std::vector<Clause>{Clause{q}}}; }

Config Config::from_clauses(std::vector<Clause> clauses) {
    for (Clause& c : clauses) {
        normalize_clause(c);
    }
    return Config{minimize(std::move(clauses))};
}

Config Config::any_of(std::span<const StateId> states) {
    std::vector<Clause> clauses;
    clauses.reserve(states.size());
    for (StateId q : states) {
        clauses.push_back(Clause{q});
    }
    return from_clauses(std::move(clauses));
}

Config Config::all_of(std::span<const StateId> states) {
    return from_clauses({Clause(states.begin(), states.end())});
}

ConfigKind Config::kind() const {
    if (is_bot()) {
        return ConfigKind::Bot;
    }
    if (is_top()) {
        return ConfigKind::Top;
    }
    if (clauses_.size() == 1 && clauses_.front().size() == 1) {
        return ConfigKind::SingleState;
    }
    return ConfigKind::Compound;
}

StateId Config::state_bound() const {
    StateId bound = 0;
    for (const Clause& c : clauses_) {
        if (!c.empty()) {
            bound = std::max(bound, c.back() + 1);
        }
    }
    return bound;
}

Config join(const Config& a, const Config& b) {
    if (a.is_bot() || b.is_top()) {
        return b;
    }
    if (b.is_bot() || a.is_top()) {
        return a;
    }
    std::vector<Clause> all;
    all.reserve(a.clauses_.size() + b.clauses_.size());
    all.insert(all.end(), a.clauses_.begin(), a.clauses_.end());
    all.insert(all.end(), b.clauses_.begin(), b.clauses_.end());
    return Config{minimize(std::move(all))};
}

Config meet(const Config& a, const Config& b) {
    if (a.is_bot() || b.is_top()) {
        return a;
    }
    if (b.is_bot() || a.is_top()) {
        return b;
    }
    std::vector<Clause> all;
    all.reserve(a.clauses_.size() * b.clauses_.size());
    for (const Clause& x : a.clauses_) {
        for (const Clause& y : b.clauses_) {
            Clause u;
            u.reserve(x.size() + y.size());
            std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(u));
            all.push_back(std::move(u));
        }
    }
    return Config{minimize(std::move(all))};
}

Config join_all(std::span<const Config> items) {
    Config result = Config::bot();
    for (const Config& e : items) {
        result = join(result, e);
    }
    return result;
}

Config meet_all(std::span<const Config> items) {
    Config result = Config::top();
    for (const Config& e : items) {
        result = meet(result, e);
    }
    return result;
}

ConfigKind classify(const Config& e) { return e.kind(); }

bool is_antichain(const std::vector<Clause>& clauses) {
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        for (std::size_t j = 0; j < clauses.size(); ++j) {
            if (i == j) {
                continue;
            }
            const Clause& a = clauses[i];
            const Clause& b = clauses[j];
            if (std::includes(b.begin(), b.end(), a.begin(), a.end())) {
                return false;
            }
        }
    }
    return true;
}

std::string to_string(const Config& e, const std::function<std::string(StateId)>& name) {
    if (e.is_top()) {
        return "T";
    }
    if (e.is_bot()) {
        return "F";
    }
    std::string out;
    bool first_clause = true;
    for (const Clause& c : e.clauses()) {
        if (!first_clause) {
            out += " | ";
        }
        first_clause = false;
        bool first_state = true;
        for (StateId q : c) {
            if (!first_state) {
                out += " & ";
            }
            first_state = false;
            out += name(q);
        }
    }
    return out;
}

std::string to_string(const Config& e, std::span<const std::string> names) {
    return to_string(e, [&](StateId q) { return names[q]; });
}

std::size_t ConfigHash::operator()(const Config& e) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const Clause& c : e.clauses()) {
        for (StateId q : c) {
            h = (h ^ q) * 0x100000001b3ULL;
        }
        h = (h ^ 0xffffffffULL) * 0x100000001b3ULL;
    }
    return h;
}

std::pair<ConfigId, bool> ConfigPool::intern(const Config& e) {
    auto [it, inserted] = index_.try_emplace(e, static_cast<ConfigId>(items_.size()));
    if (inserted) {
        items_.push_back(e);
    }
    return {it->second, inserted};
}

std::int64_t ConfigPool::find(const Config& e) const {
    auto it = index_.find(e);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

} // namespace aia
