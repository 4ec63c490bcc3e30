#include <benchmark/benchmark.h>

#include <string>

#include "aia/determinize.hh"
#include "aia/io.hh"
#include "aia/random.hh"
#include "aia/refine.hh"
#include "aia/testing.hh"

using namespace aia;

namespace {

AlternatingIA corpus_aia(const std::string& file) {
    return parse_aia(read_file(std::string(AIA_CORPUS_DIR) + "/" + file));
}

InterfaceAutomaton corpus_ia(const std::string& file) {
    return parse_ia(read_file(std::string(AIA_CORPUS_DIR) + "/" + file));
}

Config random_config(Rng& rng, std::size_t states, int depth) {
    if (depth == 0 || rng.below(4) == 0) {
        return Config::embed(static_cast<StateId>(rng.below(states)));
    }
    const Config a = random_config(rng, states, depth - 1);
    const Config b = random_config(rng, states, depth - 1);
    return rng.below(2) ? join(a, b) : meet(a, b);
}

// Dense random AIA over n states, one input and two outputs.
AlternatingIA random_aia(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::string> names;
    for (std::size_t q = 0; q < n; ++q) {
        names.push_back("q" + std::to_string(q));
    }
    AlternatingIA s(Alphabet({"a"}, {"x", "y"}), names);
    for (StateId q = 0; q < n; ++q) {
        for (LabelId l = 0; l < 3; ++l) {
            s.set_transition(q, l, random_config(rng, n, 2));
        }
    }
    s.set_initial(Config::embed(0));
    return s;
}

void BM_join_meet(benchmark::State& state) {
    Rng rng(1);
    const auto vars = static_cast<std::size_t>(state.range(0));
    std::vector<Config> pool;
    for (int k = 0; k < 256; ++k) {
        pool.push_back(random_config(rng, vars, 4));
    }
    std::size_t k = 0;
    for (auto _ : state) {
        const Config& a = pool[k % pool.size()];
        const Config& b = pool[(k * 7 + 3) % pool.size()];
        benchmark::DoNotOptimize(meet(join(a, b), b));
        ++k;
    }
}
BENCHMARK(BM_join_meet)->Arg(4)->Arg(8)->Arg(16);

void BM_det_random(benchmark::State& state) {
    const AlternatingIA s = random_aia(static_cast<std::size_t>(state.range(0)), 5);
    std::size_t states = 0;
    for (auto _ : state) {
        states = det(s).num_states();
        benchmark::DoNotOptimize(states);
    }
    state.counters["det_states"] = static_cast<double>(states);
}
BENCHMARK(BM_det_random)->Arg(4)->Arg(6)->Arg(8);

void BM_refine_vending(benchmark::State& state) {
    const AlternatingIA spec = corpus_aia("sB.aia");
    const InterfaceAutomaton impl = corpus_ia("vending_good.ia");
    for (auto _ : state) {
        benchmark::DoNotOptimize(leq_ia_aia(impl, spec).holds);
    }
}
BENCHMARK(BM_refine_vending);

void BM_refine_random(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const AlternatingIA s1 = random_aia(n, 11);
    const AlternatingIA s2 = disj(s1, random_aia(n, 12));
    for (auto _ : state) {
        benchmark::DoNotOptimize(leq_aia(s1, s2).holds);
    }
}
BENCHMARK(BM_refine_random)->Arg(4)->Arg(6)->Arg(8);

void BM_tester_exhaustive(benchmark::State& state) {
    const AlternatingIA spec = corpus_aia("sB.aia");
    const InterfaceAutomaton impl = corpus_ia("vending_good.ia");
    for (auto _ : state) {
        const Tester t = build_tester(spec);
        benchmark::DoNotOptimize(verdict_exhaustive(t, impl).failed());
    }
}
BENCHMARK(BM_tester_exhaustive);

void BM_gen_singular(benchmark::State& state) {
    const AlternatingIA spec = corpus_aia("sB.aia");
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen_singular(spec, {seed++, 8, 0.1}).automaton.num_states());
    }
}
BENCHMARK(BM_gen_singular);

} // namespace

BENCHMARK_MAIN();
