#include "aia/testing.hh"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "aia/random.hh"

namespace aia {

namespace {

constexpr const char* kPass = "pass";
constexpr const char* kFail = "fail";

std::optional<StateId> single(const StateSet& targets) {
    if (targets.empty()) {
        return std::nullopt;
    }
    return targets.front();
}

} // namespace

std::string refusal_name(const std::string& input) { return "~" + input; }

Tester Tester::from_ia(InterfaceAutomaton automaton) {
    const Alphabet& ta = automaton.alphabet();
    std::vector<std::string> spec_inputs;
    std::vector<std::string> refusals;
    for (const std::string& name : ta.outputs()) {
        if (name.front() == '~') {
            refusals.push_back(name.substr(1));
        } else {
            spec_inputs.push_back(name);
        }
    }
    if (refusals != spec_inputs) {
        throw ModelError("tester outputs must pair every input a with its refusal ~a");
    }

    Tester t;
    t.spec_alphabet_ = Alphabet(spec_inputs, ta.inputs());
    const Alphabet& sa = t.spec_alphabet_;
    t.label_map_.resize(sa.size());
    t.refusal_map_.resize(sa.num_inputs());
    for (LabelId l = 0; l < sa.size(); ++l) {
        t.label_map_[l] = *ta.find(sa.name(l));
        if (sa.is_input(l)) {
            t.refusal_map_[l] = *ta.find(refusal_name(sa.name(l)));
        }
    }
    auto pass = automaton.find_state(kPass);
    auto fail = automaton.find_state(kFail);
    if (!pass || !fail) {
        throw ModelError("tester needs states named pass and fail");
    }
    t.pass_ = *pass;
    t.fail_ = *fail;
    if (automaton.initial().size() != 1) {
        throw ModelError("tester must have exactly one initial state");
    }
    t.automaton_ = std::move(automaton);
    check_tester(t);
    return t;
}

std::optional<StateId> Tester::next(StateId q, LabelId l) const {
    return single(automaton_.successors(q, label_map_[l]));
}

std::optional<StateId> Tester::next_refusal(StateId q, LabelId a) const {
    return single(automaton_.successors(q, refusal_map_[a]));
}

void check_tester(const Tester& t) {
    const InterfaceAutomaton& a = t.automaton();
    const Alphabet& sa = t.spec_alphabet();
    if (a.initial().size() != 1) {
        throw ModelError("tester must have exactly one initial state");
    }
    for (StateId q = 0; q < a.num_states(); ++q) {
        const std::string where = " in tester state '" + a.state_name(q) + "'";
        for (LabelId l = 0; l < a.alphabet().size(); ++l) {
            if (a.successors(q, l).size() > 1) {
                throw ModelError("nondeterministic transition on '" + a.alphabet().name(l) + "'" +
                                 where);
            }
        }
        for (LabelId x = static_cast<LabelId>(sa.num_inputs()); x < sa.size(); ++x) {
            auto next = t.next(q, x);
            if (!next) {
                throw ModelError("output '" + sa.name(x) + "' not accepted" + where);
            }
            if (t.is_verdict(q) && *next != q) {
                throw ModelError("verdict state must loop on '" + sa.name(x) + "'" + where);
            }
        }
        for (LabelId in = 0; in < sa.num_inputs(); ++in) {
            const bool offers = t.next(q, in).has_value();
            const bool refuses = t.next_refusal(q, in).has_value();
            if (t.is_verdict(q) && (offers || refuses)) {
                throw ModelError("verdict state must not emit '" + sa.name(in) + "'" + where);
            }
            if (offers != refuses) {
                throw ModelError("input '" + sa.name(in) + "' and its refusal must be offered together" +
                                 where);
            }
        }
    }
}

Tester build_tester(const AlternatingIA& s, const ExplorationLimits& limits) {
    const Alphabet& sa = s.alphabet();
    std::vector<std::string> tester_outputs;
    for (const std::string& in : sa.inputs()) {
        tester_outputs.push_back(in);
        tester_outputs.push_back(refusal_name(in));
    }
    Alphabet ta(sa.outputs(), tester_outputs);

    ConfigPool pool;
    std::deque<ConfigId> work;
    const Config& init = s.initial();
    if (!init.is_top() && !init.is_bot()) {
        pool.intern(init);
        work.push_back(0);
    }
    struct Edge {
        ConfigId from;
        LabelId label;
        bool refusal;
        Config target;
    };
    std::vector<Edge> edges;
    while (!work.empty()) {
        const ConfigId id = work.front();
        work.pop_front();
        const Config e = pool.at(id);
        for (LabelId l = 0; l < sa.size(); ++l) {
            Config next = after(s, e, l);
            if (sa.is_input(l)) {
                if (next.is_top()) {
                    continue;
                }
                edges.push_back({id, l, true, Config::bot()});
            }
            if (!next.is_top() && !next.is_bot()) {
                auto [nid, inserted] = pool.intern(next);
                if (inserted) {
                    if (pool.size() > limits.max_configs) {
                        throw ResourceError("tester construction", limits.max_configs);
                    }
                    work.push_back(nid);
                }
            }
            edges.push_back({id, l, false, std::move(next)});
        }
    }

    std::vector<std::string> names;
    for (ConfigId id = 0; id < pool.size(); ++id) {
        std::string name = s.format(pool.at(id));
        if (name == kPass || name == kFail) {
            name = "<" + name + ">";
        }
        names.push_back(std::move(name));
    }
    const auto pass = static_cast<StateId>(names.size());
    const auto fail = pass + 1;
    names.emplace_back(kPass);
    names.emplace_back(kFail);
    InterfaceAutomaton a(ta, names, "tester(" + s.name() + ")");

    auto state_of = [&](const Config& e) -> StateId {
        if (e.is_top()) {
            return pass;
        }
        if (e.is_bot()) {
            return fail;
        }
        return static_cast<StateId>(pool.find(e));
    };
    for (const Edge& edge : edges) {
        const std::string& label = sa.name(edge.label);
        const LabelId tl = *ta.find(edge.refusal ? refusal_name(label) : label);
        a.add_transition(edge.from, tl, state_of(edge.target));
    }
    for (LabelId x = 0; x < ta.num_inputs(); ++x) {
        a.add_transition(pass, x, pass);
        a.add_transition(fail, x, fail);
    }
    a.set_initial({state_of(init)});
    return Tester::from_ia(std::move(a));
}

namespace {

struct Move {
    Observation obs;
    StateId tester_next;
};

// Moves of the execution from (tq, iq), in label order with a refusal before the label itself.
std::vector<Move> enabled_moves(const Tester& t, const InterfaceAutomaton& impl, StateId tq,
                                StateId iq) {
    std::vector<Move> moves;
    const Alphabet& sa = t.spec_alphabet();
    for (LabelId l = 0; l < sa.size(); ++l) {
        const bool impl_can = !impl.successors(iq, l).empty();
        if (sa.is_input(l) && !impl_can) {
            if (auto next = t.next_refusal(tq, l)) {
                moves.push_back({{l, true}, *next});
            }
        }
        if (impl_can) {
            if (auto next = t.next(tq, l)) {
                moves.push_back({{l, false}, *next});
            }
        }
    }
    return moves;
}

void check_implementation(const Tester& t, const InterfaceAutomaton& impl) {
    require_same_alphabet(t.spec_alphabet(), impl.alphabet(), "execution");
    if (impl.is_empty()) {
        throw PreconditionError("implementation has no initial state");
    }
}

using PairState = std::pair<StateId, StateId>;

struct PairHash {
    std::size_t operator()(const PairState& p) const noexcept {
        return (static_cast<std::size_t>(p.first) << 32) ^ p.second;
    }
};

} // namespace

ExecutionProduct execute_product(const Tester& t, const InterfaceAutomaton& impl,
                                 const ExplorationLimits& limits) {
    check_implementation(t, impl);
    const Alphabet& sa = t.spec_alphabet();

    std::vector<std::string> label_names;
    std::vector<Observation> label_obs;
    for (LabelId l = 0; l < sa.size(); ++l) {
        if (sa.is_input(l)) {
            label_names.push_back(format_observation(sa, {l, true}));
            label_obs.push_back({l, true});
        }
        label_names.push_back(sa.decorated(l));
        label_obs.push_back({l, false});
    }
    Alphabet pa({}, label_names);

    ExecutionProduct product;
    product.observations.resize(pa.size());
    for (std::size_t k = 0; k < label_names.size(); ++k) {
        product.observations[*pa.find(label_names[k])] = label_obs[k];
    }

    std::unordered_map<PairState, StateId, PairHash> index;
    std::deque<StateId> work;
    auto intern = [&](PairState p) {
        auto [it, inserted] = index.try_emplace(p, static_cast<StateId>(product.pairs.size()));
        if (inserted) {
            if (product.pairs.size() >= limits.max_configs) {
                throw ResourceError("execution product", limits.max_configs);
            }
            product.pairs.push_back(p);
            work.push_back(it->second);
        }
        return it->second;
    };
    StateSet initial;
    for (StateId q : impl.initial()) {
        initial.push_back(intern({t.initial(), q}));
    }
    struct Edge {
        StateId from;
        LabelId label;
        StateId to;
    };
    std::vector<Edge> edges;
    while (!work.empty()) {
        const StateId id = work.front();
        work.pop_front();
        const auto [tq, iq] = product.pairs[id];
        for (const Move& m : enabled_moves(t, impl, tq, iq)) {
            const LabelId pl = *pa.find(m.obs.refused ? format_observation(sa, m.obs)
                                                      : sa.decorated(m.obs.label));
            if (m.obs.refused) {
                edges.push_back({id, pl, intern({m.tester_next, iq})});
            } else {
                for (StateId succ : impl.successors(iq, m.obs.label)) {
                    edges.push_back({id, pl, intern({m.tester_next, succ})});
                }
            }
        }
    }

    std::vector<std::string> names;
    names.reserve(product.pairs.size());
    for (const auto& [tq, iq] : product.pairs) {
        names.push_back(t.automaton().state_name(tq) + " || " + impl.state_name(iq));
    }
    product.automaton = InterfaceAutomaton(pa, names, t.automaton().name() + " || " + impl.name());
    for (const Edge& e : edges) {
        product.automaton.add_transition(e.from, e.label, e.to);
    }
    product.automaton.set_initial(initial);
    return product;
}

Verdict verdict_exhaustive(const Tester& t, const InterfaceAutomaton& impl,
                           const ExplorationLimits& limits) {
    check_implementation(t, impl);
    struct Node {
        PairState state;
        std::int64_t parent;
        Observation obs;
    };
    std::vector<Node> nodes;
    std::unordered_map<PairState, std::size_t, PairHash> seen;
    std::deque<std::size_t> work;

    Verdict v;
    auto found = [&](std::size_t index) {
        v.outcome = Outcome::Fail;
        for (auto i = static_cast<std::int64_t>(index); nodes[i].parent >= 0; i = nodes[i].parent) {
            v.witness.push_back(nodes[i].obs);
        }
        std::reverse(v.witness.begin(), v.witness.end());
        v.explored_states = seen.size();
        return v;
    };
    auto visit = [&](PairState p, std::int64_t parent, Observation obs) -> bool {
        if (!seen.try_emplace(p, nodes.size()).second) {
            return false;
        }
        if (seen.size() > limits.max_configs) {
            throw ResourceError("execution product", limits.max_configs);
        }
        nodes.push_back({p, parent, obs});
        work.push_back(nodes.size() - 1);
        return p.first == t.fail();
    };

    for (StateId q : impl.initial()) {
        if (visit({t.initial(), q}, -1, {})) {
            return found(nodes.size() - 1);
        }
    }
    while (!work.empty()) {
        const std::size_t index = work.front();
        work.pop_front();
        const auto [tq, iq] = nodes[index].state;
        if (t.is_verdict(tq)) {
            continue;
        }
        for (const Move& m : enabled_moves(t, impl, tq, iq)) {
            const auto parent = static_cast<std::int64_t>(index);
            if (m.obs.refused) {
                if (visit({m.tester_next, iq}, parent, m.obs)) {
                    return found(nodes.size() - 1);
                }
                continue;
            }
            for (StateId succ : impl.successors(iq, m.obs.label)) {
                if (visit({m.tester_next, succ}, parent, m.obs)) {
                    return found(nodes.size() - 1);
                }
            }
        }
    }
    v.explored_states = seen.size();
    return v;
}

Verdict run_random(const Tester& t, const InterfaceAutomaton& impl, std::uint64_t seed,
                   std::size_t max_steps) {
    check_implementation(t, impl);
    Rng rng(seed);
    const StateSet& init = impl.initial();
    StateId tq = t.initial();
    StateId iq = init[rng.below(init.size())];

    Verdict v;
    std::size_t step = 0;
    while (step < max_steps && !t.is_verdict(tq)) {
        const std::vector<Move> moves = enabled_moves(t, impl, tq, iq);
        if (moves.empty()) {
            v.inconclusive = true;
            break;
        }
        const Move& m = moves[rng.below(moves.size())];
        if (!m.obs.refused) {
            const StateSet& succ = impl.successors(iq, m.obs.label);
            iq = succ[rng.below(succ.size())];
        }
        tq = m.tester_next;
        ++step;
        v.witness.push_back(m.obs);
        v.log.push_back({step, m.obs, tq, iq});
    }
    v.explored_states = step + 1;
    if (tq == t.fail()) {
        v.outcome = Outcome::Fail;
    } else {
        v.witness.clear();
    }
    return v;
}

std::string format_verdict(const Tester& t, const InterfaceAutomaton& impl, const Verdict& v,
                           bool with_log) {
    std::string out = v.failed() ? "FAIL" : "PASS";
    if (v.failed() && !v.witness.empty()) {
        out += ' ' + format_observations(t.spec_alphabet(), v.witness);
    }
    out += '\n';
    if (with_log) {
        for (const LogEntry& e : v.log) {
            out += std::to_string(e.step) + ' ' + format_observation(t.spec_alphabet(), e.observation) +
                   ' ' + format_name(t.automaton().state_name(e.tester_state)) + ' ' +
                   format_name(impl.state_name(e.impl_state)) + '\n';
        }
    }
    return out;
}

bool is_test_case(const Tester& t) {
    const InterfaceAutomaton& a = t.automaton();
    const Alphabet& sa = t.spec_alphabet();
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (t.is_verdict(q)) {
            continue;
        }
        std::size_t stimuli = 0;
        for (LabelId in = 0; in < sa.num_inputs(); ++in) {
            if (t.next(q, in) || t.next_refusal(q, in)) {
                ++stimuli;
            }
        }
        if (stimuli > 1) {
            return false;
        }
    }
    // Iterative DFS for a cycle through non-verdict states.
    enum class Mark : std::uint8_t { White, Grey, Black };
    std::vector<Mark> mark(a.num_states(), Mark::White);
    for (StateId root = 0; root < a.num_states(); ++root) {
        if (mark[root] != Mark::White || t.is_verdict(root)) {
            continue;
        }
        std::vector<std::pair<StateId, LabelId>> stack{{root, 0}};
        mark[root] = Mark::Grey;
        while (!stack.empty()) {
            auto& [q, l] = stack.back();
            if (l == a.alphabet().size()) {
                mark[q] = Mark::Black;
                stack.pop_back();
                continue;
            }
            const StateSet& succ = a.successors(q, l++);
            for (StateId r : succ) {
                if (t.is_verdict(r)) {
                    continue;
                }
                if (mark[r] == Mark::Grey) {
                    return false;
                }
                if (mark[r] == Mark::White) {
                    mark[r] = Mark::Grey;
                    stack.push_back({r, 0});
                    break;
                }
            }
        }
    }
    return true;
}

std::string trace_node_name(const Alphabet& alphabet, const Word& w) {
    return "<" + format_word(alphabet, w) + ">";
}

namespace {

// Builds a singular specification node by node; node k has trace traces[k].
class TreeBuilder {
public:
    explicit TreeBuilder(const AlternatingIA& s) : s_(s) {}

    StateId add(Word trace) {
        traces_.push_back(std::move(trace));
        transitions_.emplace_back(s_.alphabet().size(), Config::top());
        return static_cast<StateId>(traces_.size() - 1);
    }
    void set(StateId node, LabelId l, Config target) { transitions_[node][l] = std::move(target); }
    const Word& trace(StateId node) const { return traces_[node]; }
    std::size_t size() const { return traces_.size(); }

    SingularSpec finish(Config initial) const {
        std::vector<std::string> names;
        for (const Word& w : traces_) {
            names.push_back(trace_node_name(s_.alphabet(), w));
        }
        SingularSpec out{AlternatingIA(s_.alphabet(), names, "singular(" + s_.name() + ")"),
                         traces_};
        for (StateId q = 0; q < traces_.size(); ++q) {
            for (LabelId l = 0; l < s_.alphabet().size(); ++l) {
                out.automaton.set_transition(q, l, transitions_[q][l]);
            }
        }
        out.automaton.set_initial(std::move(initial));
        return out;
    }

private:
    const AlternatingIA& s_;
    std::vector<Word> traces_;
    std::vector<std::vector<Config>> transitions_;
};

} // namespace

SingularSpec gen_singular(const AlternatingIA& s, const SingularOptions& options,
                          const ExplorationLimits& limits) {
    const Alphabet& sa = s.alphabet();
    TreeBuilder tree(s);
    const Config& init = s.initial();
    if (init.is_top() || init.is_bot()) {
        return tree.finish(init);
    }
    Rng rng(options.seed);
    std::vector<Config> configs;
    std::deque<StateId> work;
    auto spawn = [&](Word trace, Config e) {
        if (tree.size() >= limits.max_configs) {
            throw ResourceError("singular specification", limits.max_configs);
        }
        const StateId node = tree.add(std::move(trace));
        configs.push_back(std::move(e));
        work.push_back(node);
        return node;
    };
    spawn({}, init);

    while (!work.empty()) {
        const StateId node = work.front();
        work.pop_front();
        const Config e = configs[node];
        const Word here = tree.trace(node);

        // Continue below `node` with `next`, or cut the branch off at top.
        auto extend = [&](LabelId l, Config next) -> Config {
            if (next.is_top() || next.is_bot()) {
                return next;
            }
            if (here.size() + 1 >= options.max_depth || rng.uniform() < options.p_stop) {
                return Config::top();
            }
            Word w = here;
            w.push_back(l);
            return Config::embed(spawn(std::move(w), std::move(next)));
        };

        std::vector<LabelId> candidates;
        for (LabelId in = 0; in < sa.num_inputs(); ++in) {
            if (!after(s, e, in).is_top()) {
                candidates.push_back(in);
            }
        }
        if (!candidates.empty()) {
            const std::size_t pick = rng.below(candidates.size() + 1);
            if (pick < candidates.size()) {
                const LabelId in = candidates[pick];
                tree.set(node, in, extend(in, after(s, e, in)));
            }
        }
        for (LabelId x = static_cast<LabelId>(sa.num_inputs()); x < sa.size(); ++x) {
            tree.set(node, x, extend(x, after(s, e, x)));
        }
    }
    return tree.finish(Config::embed(0));
}

SingularSpec singular_from_trace(const AlternatingIA& s, const FTrace& trace) {
    check_ftrace(s.alphabet(), trace);
    if (ftrace_member(s, trace)) {
        throw PreconditionError("trace is an Ftrace of the specification");
    }
    TreeBuilder tree(s);

    // Cut to the shortest plain prefix leading to bottom, if there is one.
    FTrace cut = trace;
    Config e = s.initial();
    for (std::size_t k = 0; k <= trace.body.size(); ++k) {
        if (e.is_bot()) {
            cut = FTrace{Word(trace.body.begin(), trace.body.begin() + static_cast<long>(k)),
                         std::nullopt};
            break;
        }
        if (k < trace.body.size()) {
            e = after(s, e, trace.body[k]);
        }
    }
    if (cut.body.empty() && !cut.failure) {
        return tree.finish(Config::bot());
    }

    const std::size_t chain = cut.failure ? cut.body.size() + 1 : cut.body.size();
    for (std::size_t k = 0; k < chain; ++k) {
        tree.add(Word(cut.body.begin(), cut.body.begin() + static_cast<long>(k)));
    }
    for (std::size_t k = 0; k + 1 < chain; ++k) {
        tree.set(static_cast<StateId>(k), cut.body[k], Config::embed(static_cast<StateId>(k + 1)));
    }
    if (cut.failure) {
        Word w = cut.body;
        w.push_back(*cut.failure);
        const StateId leaf = tree.add(std::move(w));
        tree.set(static_cast<StateId>(chain - 1), *cut.failure, Config::embed(leaf));
    } else {
        tree.set(static_cast<StateId>(chain - 1), cut.body.back(), Config::bot());
    }
    return tree.finish(Config::embed(0));
}

bool is_singular_for(const AlternatingIA& s2, const AlternatingIA& s1) {
    require_same_alphabet(s2.alphabet(), s1.alphabet(), "singular check");
    const Alphabet& sa = s1.alphabet();
    const Config& init2 = s2.initial();
    const Config& init1 = s1.initial();
    if (init2.is_top() || init2.is_bot()) {
        if (s2.num_states() != 0) {
            return false;
        }
        return init2.is_top() ? true : init1.is_bot();
    }
    if (init2.kind() != ConfigKind::SingleState || init1.is_top()) {
        return false;
    }
    std::vector<std::optional<Config>> reached(s2.num_states());
    std::deque<StateId> work;
    const StateId root = init2.single_state();
    reached[root] = init1;
    work.push_back(root);
    while (!work.empty()) {
        const StateId q = work.front();
        work.pop_front();
        const Config e1 = *reached[q];
        std::size_t kept_inputs = 0;
        for (LabelId l = 0; l < sa.size(); ++l) {
            const Config& target = s2.transition(q, l);
            const Config next1 = after(s1, e1, l);
            if (target.is_bot() && !next1.is_bot()) {
                return false;
            }
            if (next1.is_top() && !target.is_top()) {
                return false;
            }
            if (sa.is_input(l) && !target.is_top()) {
                ++kept_inputs;
            }
            if (target.is_top() || target.is_bot()) {
                continue;
            }
            if (target.kind() != ConfigKind::SingleState) {
                return false;
            }
            const StateId child = target.single_state();
            if (child == root || reached[child]) {
                return false;
            }
            reached[child] = next1;
            work.push_back(child);
        }
        if (kept_inputs > 1) {
            return false;
        }
    }
    return std::all_of(reached.begin(), reached.end(), [](const auto& r) { return r.has_value(); });
}

} // namespace aia
