#include <catch_amalgamated.hpp>

#include "aia/determinize.hh"
#include "aia/io.hh"
#include "aia/refine.hh"
#include "aia/testing.hh"
#include "generators.hh"

using namespace aia;

namespace {

AlternatingIA load_aia(const std::string& file) { return parse_aia(read_file(gen::corpus(file))); }
InterfaceAutomaton load_ia(const std::string& file) {
    return parse_ia(read_file(gen::corpus(file)));
}

StateId tester_state(const Tester& t, const AlternatingIA& s, std::string_view expr) {
    const std::string name = s.format(parse_config(expr, s));
    auto q = t.automaton().find_state(name);
    REQUIRE(q);
    return *q;
}

std::string witness(const Tester& t, const Verdict& v) {
    return format_observations(t.spec_alphabet(), v.witness);
}

} // namespace

TEST_CASE("tester of sB fails forbidden drinks and refused takes", "[testing]") {
    const AlternatingIA s = load_aia("sB.aia");
    const Tester t = build_tester(s);
    const Alphabet& a = s.alphabet();
    CHECK(t.automaton().num_states() == 7);
    CHECK(t.automaton().alphabet().inputs() == a.outputs());

    const StateId tea = tester_state(t, s, "q4 & (q6 | q7) & q9");
    for (const char* drink : {"t", "c", "c+m"}) {
        CHECK(t.next(tea, a.output(drink)) == t.fail());
    }
    CHECK(t.next(tea, a.output("t+m")) == tester_state(t, s, "q10"));
    CHECK_FALSE(t.next(tea, a.input("take")));
    CHECK_FALSE(t.next_refusal(tea, a.input("take")));

    const StateId done = tester_state(t, s, "q10");
    CHECK(t.next_refusal(done, a.input("take")) == t.fail());
    CHECK(t.next(done, a.input("take")) == tester_state(t, s, "q1 & q3 & q5 & q8"));
    CHECK_FALSE(t.next(done, a.input("a")));

    for (LabelId x = static_cast<LabelId>(a.num_inputs()); x < a.size(); ++x) {
        CHECK(t.next(t.pass(), x) == t.pass());
        CHECK(t.next(t.fail(), x) == t.fail());
    }
    CHECK_NOTHROW(check_tester(t));
    CHECK_FALSE(is_test_case(t));
}

TEST_CASE("tester of sC is the linear test case", "[testing]") {
    const AlternatingIA s = load_aia("sC.aia");
    const Tester t = build_tester(s);
    const Alphabet& a = s.alphabet();
    CHECK(is_test_case(t));
    CHECK(is_singular_for(s, load_aia("sB.aia")));

    const StateId n2 = tester_state(t, s, "n2");
    CHECK(t.next(n2, a.output("c")) == tester_state(t, s, "n3"));
    for (const char* other : {"t", "t+m", "c+m"}) {
        CHECK(t.next(n2, a.output(other)) == t.fail());
    }
    const StateId n5 = tester_state(t, s, "n5");
    CHECK(t.next(n5, a.output("t+m")) == t.pass());
    CHECK(t.next(n5, a.output("t")) == t.fail());
    CHECK(t.next_refusal(tester_state(t, s, "n0"), a.input("on")) == t.fail());
}

TEST_CASE("tester of the top specification passes at once", "[testing]") {
    const Alphabet a({"a"}, {"x"});
    const Tester t = build_tester(aia_top(a));
    CHECK(t.initial() == t.pass());
    const Tester f = build_tester(aia_bot(a));
    CHECK(f.initial() == f.fail());
}

TEST_CASE("exhaustive verdicts on the vending corpus", "[testing]") {
    const AlternatingIA s = load_aia("sB.aia");
    const Tester t = build_tester(s);

    const Verdict good = verdict_exhaustive(t, load_ia("vending_good.ia"));
    CHECK_FALSE(good.failed());

    const Verdict tea = verdict_exhaustive(t, load_ia("vending_tfault.ia"));
    CHECK(tea.failed());
    CHECK(witness(t, tea) == "?on ?b !t");
    CHECK(format_verdict(t, load_ia("vending_tfault.ia"), tea, false) == "FAIL ?on ?b !t\n");

    const Verdict take = verdict_exhaustive(t, load_ia("vending_notake.ia"));
    CHECK(take.failed());
    CHECK(witness(t, take) == "?on ?a !c ~take");

    const Tester tc = build_tester(load_aia("sC.aia"));
    CHECK_FALSE(verdict_exhaustive(tc, load_ia("vending_good.ia")).failed());
}

TEST_CASE("execution product follows both rules", "[testing]") {
    const AlternatingIA s = load_aia("sB.aia");
    const Tester t = build_tester(s);
    const InterfaceAutomaton impl = load_ia("vending_notake.ia");
    const ExecutionProduct p = execute_product(t, impl);
    bool fail_by_refusal = false;
    for (StateId k = 0; k < p.automaton.num_states(); ++k) {
        for (LabelId l = 0; l < p.automaton.alphabet().size(); ++l) {
            for (StateId r : p.automaton.successors(k, l)) {
                const Observation& obs = p.observations[l];
                if (p.pairs[r].first == t.fail() && obs.refused &&
                    s.alphabet().name(obs.label) == "take") {
                    fail_by_refusal = true;
                    CHECK(p.pairs[r].second == p.pairs[k].second);
                }
                if (p.pairs[k].first == t.pass()) {
                    CHECK_FALSE(s.alphabet().is_input(obs.label));
                }
            }
        }
    }
    CHECK(fail_by_refusal);
    CHECK(p.automaton.alphabet().num_inputs() == 0);

    const ExecutionProduct good = execute_product(t, load_ia("vending_good.ia"));
    for (const auto& [tq, iq] : good.pairs) {
        CHECK(tq != t.fail());
    }

    InterfaceAutomaton empty(s.alphabet(), {"x"});
    CHECK_THROWS_AS(execute_product(t, empty), PreconditionError);
    CHECK_THROWS_AS(verdict_exhaustive(t, load_ia("p.ia")), AlphabetError);
}

TEST_CASE("random runs are reproducible and sound", "[testing]") {
    const AlternatingIA spec = load_aia("sB.aia");
    const Tester t = build_tester(spec);
    const InterfaceAutomaton impl = load_ia("vending_tfault.ia");
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Verdict v = run_random(t, impl, seed, 50);
        const Verdict again = run_random(t, impl, seed, 50);
        REQUIRE(format_verdict(t, impl, v, true) == format_verdict(t, impl, again, true));
        if (v.failed()) {
            ++failures;
            const std::string w = witness(t, v);
            CHECK(w.size() >= 9);
            CHECK(w.substr(w.size() - 6) == " ?b !t");
            const auto trace = to_ftrace(v.witness);
            REQUIRE(trace);
            CHECK(ftrace_member(impl, *trace));
            CHECK_FALSE(ftrace_member(spec, *trace));
        }
    }
    CHECK(failures > 0);

    const InterfaceAutomaton good = load_ia("vending_good.ia");
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        CHECK_FALSE(run_random(t, good, seed, 30).failed());
    }
}

TEST_CASE("random run logs list every step", "[testing]") {
    const Tester t = build_tester(load_aia("sC.aia"));
    const InterfaceAutomaton impl = load_ia("vending_good.ia");
    const Verdict v = run_random(t, impl, 1, 100);
    CHECK_FALSE(v.failed());
    CHECK(v.log.size() == 6);
    const std::string text = format_verdict(t, impl, v, true);
    CHECK(text.rfind("PASS\n1 ?on n1 ready\n", 0) == 0);
    CHECK(text.find("6 !t+m pass done\n") != std::string::npos);

    const Verdict cut = run_random(t, impl, 1, 2);
    CHECK_FALSE(cut.failed());
    CHECK(cut.log.size() == 2);
}

TEST_CASE("a run without enabled moves is inconclusive", "[testing]") {
    const Tester t = build_tester(load_aia("sC.aia"));
    // Accepts ?on but then neither outputs nor refuses anything the tester offers.
    InterfaceAutomaton impl(t.spec_alphabet(), {"s0", "s1"});
    impl.add_transition(0, t.spec_alphabet().input("on"), 1);
    impl.add_transition(1, t.spec_alphabet().input("a"), 1);
    impl.set_initial({0});
    const Verdict v = run_random(t, impl, 0, 10);
    CHECK_FALSE(v.failed());
    CHECK(v.inconclusive);
    CHECK(v.log.size() == 2);
    CHECK(verdict_exhaustive(t, impl).failed() == !leq_ia_aia(impl, load_aia("sC.aia")).holds);
}

TEST_CASE("generated singular specifications", "[testing]") {
    const AlternatingIA s = load_aia("sB.aia");
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const SingularSpec g = gen_singular(s, {seed, 6, 0.2});
        CHECK(is_singular_for(g.automaton, s));
        CHECK(leq_aia(s, g.automaton).holds);
        CHECK(is_test_case(build_tester(g.automaton)));
        CHECK(g.node_traces.size() == g.automaton.num_states());
    }
}

TEST_CASE("some seed generates exactly sC", "[testing]") {
    const AlternatingIA b = load_aia("sB.aia");
    const AlternatingIA c = load_aia("sC.aia");
    const Word chain = parse_trace("?on ?a !c ?take ?b", b.alphabet()).body;
    std::optional<SingularSpec> found;
    for (std::uint64_t seed = 0; seed < 5000 && !found; ++seed) {
        SingularSpec g = gen_singular(b, {seed, 6, 0.0});
        if (g.node_traces.size() == 6 && g.node_traces.back() == chain) {
            found = std::move(g);
        }
    }
    REQUIRE(found);
    CHECK(equiv(found->automaton, c));
    for (StateId k = 0; k < 6; ++k) {
        CHECK(found->node_traces[k] == Word(chain.begin(), chain.begin() + k));
        for (LabelId l = 0; l < b.alphabet().size(); ++l) {
            const Config& mine = found->automaton.transition(k, l);
            const Config& theirs = c.transition(k, l);
            CHECK(mine == theirs);
        }
    }
}

TEST_CASE("singular specification from a failing trace", "[testing]") {
    const AlternatingIA s = load_aia("sB.aia");
    const Alphabet& a = s.alphabet();

    const SingularSpec tea = singular_from_trace(s, parse_trace("?on ?b !t", a));
    CHECK(tea.automaton.num_states() == 3);
    CHECK(tea.automaton.transition(2, a.output("t")).is_bot());
    CHECK(tea.automaton.transition(2, a.output("t+m")).is_top());
    CHECK(is_singular_for(tea.automaton, s));
    const Tester tt = build_tester(tea.automaton);
    CHECK(is_test_case(tt));
    CHECK(verdict_exhaustive(tt, load_ia("vending_tfault.ia")).failed());
    CHECK_FALSE(verdict_exhaustive(tt, load_ia("vending_good.ia")).failed());

    const SingularSpec take = singular_from_trace(s, parse_trace("?on ?a !c ~take", a));
    CHECK(take.automaton.num_states() == 5);
    CHECK(is_singular_for(take.automaton, s));
    CHECK(verdict_exhaustive(build_tester(take.automaton), load_ia("vending_notake.ia")).failed());

    // Only the shortest forbidden prefix is kept.
    const SingularSpec cut = singular_from_trace(s, parse_trace("?on ?b !t !c ?a", a));
    CHECK(cut.automaton.num_states() == 3);

    CHECK_THROWS_AS(singular_from_trace(s, parse_trace("?on ?b !t+m", a)), PreconditionError);

    const SingularSpec empty = singular_from_trace(aia_bot(a), FTrace{});
    CHECK(empty.automaton.num_states() == 0);
    CHECK(empty.automaton.initial().is_bot());
}

TEST_CASE("non-singular shapes are rejected", "[testing]") {
    const AlternatingIA b = load_aia("sB.aia");
    CHECK_FALSE(is_singular_for(b, b));
    CHECK_FALSE(is_singular_for(det(b), b));
    CHECK(is_singular_for(aia_top(b.alphabet()), b));
    CHECK_FALSE(is_singular_for(aia_bot(b.alphabet()), b));

    // Forbidding an output that sB allows breaks the first condition.
    AlternatingIA bad = parse_aia(read_file(gen::corpus("sC.aia")));
    bad.set_transition(*bad.find_state("n5"), b.alphabet().output("t+m"), Config::bot());
    CHECK_FALSE(is_singular_for(bad, b));
}

TEST_CASE("hand-written testers are validated", "[testing]") {
    const Alphabet spec({"a"}, {"x"});
    const Alphabet swapped({"x"}, {"a", "~a"});
    InterfaceAutomaton ok(swapped, {"s", "pass", "fail"});
    ok.add_transition(0, *swapped.find("a"), 1);
    ok.add_transition(0, *swapped.find("~a"), 2);
    for (StateId q = 0; q < 3; ++q) {
        ok.add_transition(q, *swapped.find("x"), q == 0 ? 2 : q);
    }
    ok.set_initial({0});
    const Tester t = Tester::from_ia(ok);
    CHECK(t.spec_alphabet() == spec);
    CHECK(is_test_case(t));

    InterfaceAutomaton unpaired = ok;
    unpaired.set_successors(0, *swapped.find("~a"), {});
    CHECK_THROWS_AS(Tester::from_ia(unpaired), ModelError);

    InterfaceAutomaton not_enabled = ok;
    not_enabled.set_successors(1, *swapped.find("x"), {});
    CHECK_THROWS_AS(Tester::from_ia(not_enabled), ModelError);

    InterfaceAutomaton nameless(swapped, {"s", "p", "f"});
    nameless.set_initial({0});
    CHECK_THROWS_AS(Tester::from_ia(nameless), ModelError);
}
