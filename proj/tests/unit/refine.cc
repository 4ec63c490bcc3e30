#include <catch_amalgamated.hpp>

#include "aia/determinize.hh"
#include "aia/io.hh"
#include "aia/refine.hh"
#include "generators.hh"
#include "oracle.hh"

using namespace aia;

namespace {

AlternatingIA load_aia(const std::string& file) { return parse_aia(read_file(gen::corpus(file))); }
InterfaceAutomaton load_ia(const std::string& file) {
    return parse_ia(read_file(gen::corpus(file)));
}

std::string cex(const RefinementResult& r, const Alphabet& a) {
    REQUIRE(r.counterexample);
    return format_trace(a, *r.counterexample);
}

} // namespace

TEST_CASE("the conjunction of the three views refines q", "[refine]") {
    const InterfaceAutomaton pqr = load_ia("pqr.ia");
    const InterfaceAutomaton q = load_ia("q.ia");
    CHECK(leq_ia(pqr, q).holds);
    CHECK(leq_ia(q, q).holds);

    // Cross-check against the enumerated closures.
    const auto left = oracle::ia_ftraces(pqr, 4);
    const auto right = oracle::closure(oracle::ia_ftraces(q, 4), q.alphabet(), 4);
    CHECK_FALSE(oracle::first_difference(left, right));
}

TEST_CASE("r does not refine q: coffee with milk after ?b", "[refine]") {
    const InterfaceAutomaton r = load_ia("r.ia");
    const InterfaceAutomaton q = load_ia("q.ia");
    const RefinementResult res = leq_ia(r, q);
    CHECK_FALSE(res.holds);
    CHECK(cex(res, r.alphabet()) == "?b !c+m");

    const auto left = oracle::ia_ftraces(r, 4);
    const auto right = oracle::closure(oracle::ia_ftraces(q, 4), q.alphabet(), 4);
    const auto diff = oracle::first_difference(left, right);
    REQUIRE(diff);
    CHECK(format_trace(r.alphabet(), *diff) == "?b !c+m");
}

TEST_CASE("vending implementations against sB", "[refine]") {
    const AlternatingIA s = load_aia("sB.aia");
    CHECK(leq_ia_aia(load_ia("vending_good.ia"), s).holds);

    const RefinementResult tea = leq_ia_aia(load_ia("vending_tfault.ia"), s);
    CHECK_FALSE(tea.holds);
    CHECK(cex(tea, s.alphabet()) == "?on ?b !t");

    const RefinementResult take = leq_ia_aia(load_ia("vending_notake.ia"), s);
    CHECK_FALSE(take.holds);
    CHECK(cex(take, s.alphabet()) == "?on ?a !c ~take");

    InterfaceAutomaton empty(s.alphabet(), {"x"});
    CHECK(leq_ia_aia(empty, s).holds);
}

TEST_CASE("a specification and its determinization are equivalent", "[refine]") {
    for (const char* file : {"sA.aia", "sB.aia", "sC.aia"}) {
        const AlternatingIA s = load_aia(file);
        const AlternatingIA d = det(s);
        CHECK(leq_aia(s, d).holds);
        CHECK(leq_aia(d, s).holds);
        CHECK(equiv(s, d));
        CHECK(leq_aia(s, aia_top(s.alphabet())).holds);
        CHECK(leq_aia(aia_bot(s.alphabet()), s).holds);
    }
}

TEST_CASE("sB refines its weakening sC but not the converse", "[refine]") {
    const AlternatingIA b = load_aia("sB.aia");
    const AlternatingIA c = load_aia("sC.aia");
    CHECK(leq_aia(b, c).holds);
    const RefinementResult back = leq_aia(c, b);
    CHECK_FALSE(back.holds);
    CHECK(ftrace_member(c, *back.counterexample));
    CHECK_FALSE(ftrace_member(b, *back.counterexample));
}

TEST_CASE("different alphabets are an error", "[refine]") {
    CHECK_THROWS_AS(leq_aia(load_aia("sA.aia"), load_aia("sB.aia")), AlphabetError);
    CHECK_THROWS_AS(equiv(load_aia("sA.aia"), load_aia("sB.aia")), AlphabetError);
}

TEST_CASE("bottom on the right yields the empty counterexample", "[refine]") {
    const AlternatingIA a = load_aia("sA.aia");
    const RefinementResult r = leq_aia(a, aia_bot(a.alphabet()));
    CHECK_FALSE(r.holds);
    CHECK(r.counterexample->length() == 0);
}

TEST_CASE("refinement agrees with bounded inclusion", "[refine][oracle]") {
    Rng rng(43);
    const Alphabet alphabet = gen::alphabet(2, 2);
    for (int round = 0; round < 60; ++round) {
        const AlternatingIA s1 = gen::aia(rng, alphabet, {3});
        const AlternatingIA s2 = gen::aia(rng, alphabet, {3});
        const RefinementResult r = leq_aia(s1, s2);
        const auto diff =
            oracle::first_difference(oracle::aia_ftraces(s1, 4), oracle::aia_ftraces(s2, 4));
        if (diff) {
            REQUIRE_FALSE(r.holds);
            CHECK(r.counterexample->length() <= diff->length());
        }
        if (!r.holds) {
            CHECK(ftrace_member(s1, *r.counterexample));
            CHECK_FALSE(ftrace_member(s2, *r.counterexample));
        }
        CHECK(leq_aia(s1, s1).holds);
        CHECK(leq_aia(s1, conj(s1, s2)).holds == r.holds);
    }
}

TEST_CASE("refinement is transitive on sampled triples", "[refine]") {
    Rng rng(47);
    const Alphabet alphabet = gen::alphabet(1, 2);
    int premises = 0;
    for (int round = 0; round < 400; ++round) {
        const AlternatingIA a = gen::aia(rng, alphabet, {2});
        const AlternatingIA b = disj(a, gen::aia(rng, alphabet, {2}));
        const AlternatingIA c = disj(b, gen::aia(rng, alphabet, {2}));
        if (leq_aia(a, b).holds && leq_aia(b, c).holds) {
            ++premises;
            CHECK(leq_aia(a, c).holds);
        }
    }
    CHECK(premises > 0);
}
