#include "aia/determinize.hh"

#include <deque>

namespace aia {

Determinization determinize(const AlternatingIA& s, const ExplorationLimits& limits) {
    const Alphabet& alph = s.alphabet();
    ConfigPool pool;
    std::deque<ConfigId> work;

    auto visit = [&](const Config& e) {
        auto [id, inserted] = pool.intern(e);
        if (inserted) {
            if (pool.size() > limits.max_configs) {
                throw ResourceError("determinization", limits.max_configs);
            }
            work.push_back(id);
        }
        return id;
    };

    const Config& init = s.initial();
    if (!init.is_top() && !init.is_bot()) {
        visit(init);
    }

    // First pass: discover every reachable configuration. Edges are recorded
    // as (source, label, target config) and resolved once all names exist.
    struct Edge {
        ConfigId from;
        LabelId label;
        Config target;
    };
    std::vector<Edge> edges;
    while (!work.empty()) {
        const ConfigId id = work.front();
        work.pop_front();
        const Config source = pool.at(id);
        for (LabelId l = 0; l < alph.size(); ++l) {
            Config next = after(s, source, l);
            if (!next.is_top() && !next.is_bot()) {
                visit(next);
            }
            edges.push_back({id, l, std::move(next)});
        }
    }

    std::vector<std::string> names;
    std::vector<Config> configs;
    names.reserve(pool.size());
    configs.reserve(pool.size());
    for (ConfigId id = 0; id < pool.size(); ++id) {
        names.push_back(s.format(pool.at(id)));
        configs.push_back(pool.at(id));
    }

    AlternatingIA result(alph, std::move(names), s.name().empty() ? "det" : "det_" + s.name());
    for (const Edge& edge : edges) {
        Config target = edge.target;
        if (!target.is_top() && !target.is_bot()) {
            target = Config::embed(static_cast<StateId>(pool.find(target)));
        }
        result.set_transition(edge.from, edge.label, std::move(target));
    }
    if (init.is_top() || init.is_bot()) {
        result.set_initial(init);
    } else {
        result.set_initial(Config::embed(0));
    }
    return {std::move(result), std::move(configs)};
}

bool check_deterministic(const AlternatingIA& s, const ExplorationLimits& limits) {
    const Alphabet& alph = s.alphabet();
    ConfigPool pool;
    std::deque<ConfigId> work;
    auto visit = [&](const Config& e) {
        if (e.is_top() || e.is_bot()) {
            return true;
        }
        if (e.kind() != ConfigKind::SingleState) {
            return false;
        }
        auto [id, inserted] = pool.intern(e);
        if (inserted) {
            if (pool.size() > limits.max_configs) {
                throw ResourceError("determinism check", limits.max_configs);
            }
            work.push_back(id);
        }
        return true;
    };
    if (!visit(s.initial())) {
        return false;
    }
    while (!work.empty()) {
        const Config source = pool.at(work.front());
        work.pop_front();
        for (LabelId l = 0; l < alph.size(); ++l) {
            if (!visit(after(s, source, l))) {
                return false;
            }
        }
    }
    return true;
}

} // namespace aia
