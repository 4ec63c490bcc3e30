#include "aia/refine.hh"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace aia {

namespace {

struct PairKey {
    ConfigId left;
    ConfigId right;
    friend bool operator==(const PairKey&, const PairKey&) = default;
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const noexcept {
        return (static_cast<std::size_t>(k.left) << 32) ^ k.right;
    }
};

struct Node {
    PairKey key;
    std::int64_t parent;
    LabelId label;
};

// Shortest prefix decomposition rho a of the trace with rho ~a in Ftraces(i).
// The input-failure closure adds exactly the extensions of such prefixes.
FTrace shrink_to_ia_member(const InterfaceAutomaton& i, const FTrace& trace) {
    if (ftrace_member(i, trace)) {
        return trace;
    }
    FTrace prefix;
    for (LabelId l : trace.body) {
        if (i.alphabet().is_input(l)) {
            FTrace refusal{prefix.body, l};
            if (ftrace_member(i, refusal)) {
                return refusal;
            }
        }
        prefix.body.push_back(l);
    }
    return trace;
}

} // namespace

RefinementResult leq_aia(const AlternatingIA& left, const AlternatingIA& right,
                         const ExplorationLimits& limits) {
    require_same_alphabet(left.alphabet(), right.alphabet(), "refinement");
    const Alphabet& alph = left.alphabet();

    ConfigPool left_pool;
    ConfigPool right_pool;
    std::unordered_map<PairKey, std::size_t, PairKeyHash> seen;
    std::vector<Node> nodes;
    std::deque<std::size_t> work;

    auto word_of = [&](std::int64_t index) {
        Word w;
        while (index > 0) {
            w.push_back(nodes[index].label);
            index = nodes[index].parent;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    auto check_cap = [&] {
        if (left_pool.size() + right_pool.size() > limits.max_configs) {
            throw ResourceError("refinement check", limits.max_configs);
        }
    };

    RefinementResult result;
    auto fail = [&](FTrace cex) {
        result.holds = false;
        result.counterexample = std::move(cex);
        result.explored_pairs = seen.size();
        return result;
    };

    const Config& init1 = left.initial();
    const Config& init2 = right.initial();
    if (init1.is_bot()) {
        return result;
    }
    if (init2.is_bot()) {
        return fail(FTrace{});
    }
    const PairKey root{left_pool.intern(init1).first, right_pool.intern(init2).first};
    seen.emplace(root, 0);
    nodes.push_back({root, -1, 0});
    work.push_back(0);

    while (!work.empty()) {
        const std::size_t index = work.front();
        work.pop_front();
        const Config e1 = left_pool.at(nodes[index].key.left);
        const Config e2 = right_pool.at(nodes[index].key.right);
        // Top on the right admits everything; top on both sides likewise.
        if (e2.is_top()) {
            continue;
        }
        for (LabelId l = 0; l < alph.size(); ++l) {
            const Config next1 = after(left, e1, l);
            if (next1.is_bot()) {
                continue;
            }
            const Config next2 = after(right, e2, l);
            if (alph.is_input(l) && next1.is_top() && !next2.is_top()) {
                return fail(FTrace{word_of(static_cast<std::int64_t>(index)), l});
            }
            if (next2.is_bot()) {
                Word w = word_of(static_cast<std::int64_t>(index));
                w.push_back(l);
                return fail(FTrace{std::move(w), std::nullopt});
            }
            const PairKey key{left_pool.intern(next1).first, right_pool.intern(next2).first};
            check_cap();
            if (seen.try_emplace(key, nodes.size()).second) {
                nodes.push_back({key, static_cast<std::int64_t>(index), l});
                work.push_back(nodes.size() - 1);
            }
        }
    }
    result.explored_pairs = seen.size();
    return result;
}

RefinementResult leq_ia_aia(const InterfaceAutomaton& impl, const AlternatingIA& spec,
                            const ExplorationLimits& limits) {
    RefinementResult r = leq_aia(induce_aia(impl), spec, limits);
    if (r.counterexample) {
        r.counterexample = shrink_to_ia_member(impl, *r.counterexample);
    }
    return r;
}

RefinementResult leq_ia(const InterfaceAutomaton& left, const InterfaceAutomaton& right,
                        const ExplorationLimits& limits) {
    RefinementResult r = leq_aia(induce_aia(left), induce_aia(right), limits);
    if (r.counterexample) {
        r.counterexample = shrink_to_ia_member(left, *r.counterexample);
    }
    return r;
}

RefinementResult leq_aia_ia(const AlternatingIA& left, const InterfaceAutomaton& right,
                            const ExplorationLimits& limits) {
    return leq_aia(left, induce_aia(right), limits);
}

bool equiv(const AlternatingIA& s1, const AlternatingIA& s2, const ExplorationLimits& limits) {
    return leq_aia(s1, s2, limits).holds && leq_aia(s2, s1, limits).holds;
}

} // namespace aia
