#include "cli.hh"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "aia/determinize.hh"
#include "aia/error.hh"
#include "aia/io.hh"
#include "aia/refine.hh"
#include "aia/testing.hh"

namespace aia::cli {

namespace {

using nlohmann::json;

struct Options {
    std::size_t cap = ExplorationLimits{}.max_configs;
    bool json = false;

    std::string file;
    std::string second;
    std::string output;
    std::string trace;

    bool use_and = false;
    bool use_or = false;
    bool tester_check = false;

    std::uint64_t seed = 0;
    std::size_t depth = 8;
    double p_stop = 0.1;
    std::size_t count = 1;

    bool exhaustive = false;
    std::size_t runs = 1;
    std::size_t max_steps = 100;
    std::size_t jobs = 0;
    bool log = false;

    ExplorationLimits limits() const { return {cap}; }
};

/// Errors in how the command was invoked, as opposed to bad model contents.
class UsageFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Model load(const std::string& path) {
    try {
        return load_model(path);
    } catch (const ParseError& e) {
        throw UsageFailure(path + ":" + e.what());
    }
}

AlternatingIA as_aia(const Model& m) {
    if (const auto* i = std::get_if<InterfaceAutomaton>(&m)) {
        return induce_aia(*i);
    }
    return std::get<AlternatingIA>(m);
}

InterfaceAutomaton require_ia(const Model& m, const std::string& path) {
    if (const auto* i = std::get_if<InterfaceAutomaton>(&m)) {
        return *i;
    }
    throw UsageFailure(path + ": expected an ia model");
}

void emit(const Options& opt, std::ostream& out, const std::string& text) {
    if (opt.output.empty()) {
        out << text;
    } else {
        write_file(opt.output, text);
    }
}

std::string witness_text(const std::string& formatted) {
    return formatted.empty() ? "FAIL" : "FAIL " + formatted;
}

int cmd_check(const Options& opt, std::ostream& out) {
    const Model m = load(opt.file);
    if (const auto* i = std::get_if<InterfaceAutomaton>(&m)) {
        if (opt.tester_check) {
            Tester::from_ia(*i);
        }
        const IaFlags flags = classify_ia(*i);
        out << "ok: ia " << format_name(i->name()) << ", " << i->num_states() << " states, "
            << i->alphabet().num_inputs() << " inputs, " << i->alphabet().num_outputs()
            << " outputs" << (flags.deterministic ? ", deterministic" : "")
            << (flags.input_enabled ? ", input-enabled" : "") << (opt.tester_check ? ", tester" : "")
            << '\n';
        return Ok;
    }
    if (opt.tester_check) {
        throw UsageFailure(opt.file + ": a tester must be an ia model");
    }
    const auto& s = std::get<AlternatingIA>(m);
    out << "ok: aia " << format_name(s.name()) << ", " << s.num_states() << " states, "
        << s.alphabet().num_inputs() << " inputs, " << s.alphabet().num_outputs() << " outputs"
        << (check_deterministic(s, opt.limits()) ? ", deterministic" : "") << '\n';
    return Ok;
}

int cmd_member(const Options& opt, std::ostream& out) {
    const Model m = load(opt.file);
    std::string verdict;
    if (const auto* i = std::get_if<InterfaceAutomaton>(&m)) {
        verdict = ftrace_member(*i, parse_trace(opt.trace, i->alphabet())) ? "member" : "non-member";
    } else {
        const auto& s = std::get<AlternatingIA>(m);
        const FTrace trace = parse_trace(opt.trace, s.alphabet());
        if (trace.failure) {
            verdict = ftrace_member(s, trace) ? to_string(TraceStatus::Allowed)
                                              : to_string(TraceStatus::Forbidden);
        } else {
            verdict = to_string(query(s, trace.body).status);
        }
    }
    if (opt.json) {
        out << json{{"verdict", verdict}, {"witness", nullptr}, {"stats", json::object()}}.dump()
            << '\n';
    } else {
        out << verdict << '\n';
    }
    return Ok;
}

int cmd_det(const Options& opt, std::ostream& out) {
    emit(opt, out, print_model(det(as_aia(load(opt.file)), opt.limits())));
    return Ok;
}

int cmd_refine(const Options& opt, std::ostream& out) {
    const Model left = load(opt.file);
    const Model right = load(opt.second);
    const auto* li = std::get_if<InterfaceAutomaton>(&left);
    const auto* ri = std::get_if<InterfaceAutomaton>(&right);
    const ExplorationLimits limits = opt.limits();
    RefinementResult r;
    if (li && ri) {
        r = leq_ia(*li, *ri, limits);
    } else if (li) {
        r = leq_ia_aia(*li, std::get<AlternatingIA>(right), limits);
    } else if (ri) {
        r = leq_aia_ia(std::get<AlternatingIA>(left), *ri, limits);
    } else {
        r = leq_aia(std::get<AlternatingIA>(left), std::get<AlternatingIA>(right), limits);
    }
    const Alphabet& alphabet = li ? li->alphabet() : std::get<AlternatingIA>(left).alphabet();
    std::string cex;
    if (r.counterexample) {
        cex = format_trace(alphabet, *r.counterexample);
    }
    if (opt.json) {
        out << json{{"verdict", r.holds ? "PASS" : "FAIL"},
                    {"witness", r.holds ? json(nullptr) : json(cex)},
                    {"stats", {{"explored_pairs", r.explored_pairs}}}}
                   .dump()
            << '\n';
    } else {
        out << (r.holds ? std::string("PASS") : witness_text(cex)) << '\n';
    }
    return r.holds ? Ok : PropertyFails;
}

int cmd_compose(const Options& opt, std::ostream& out) {
    if (opt.use_and == opt.use_or) {
        throw UsageFailure("compose needs exactly one of --and and --or");
    }
    const AlternatingIA s1 = as_aia(load(opt.file));
    const AlternatingIA s2 = as_aia(load(opt.second));
    emit(opt, out, print_model(opt.use_and ? conj(s1, s2) : disj(s1, s2)));
    return Ok;
}

int cmd_to_ia(const Options& opt, std::ostream& out) {
    const Model m = load(opt.file);
    if (const auto* i = std::get_if<InterfaceAutomaton>(&m)) {
        emit(opt, out, print_model(*i));
    } else {
        emit(opt, out, print_model(induce_ia(std::get<AlternatingIA>(m), opt.limits())));
    }
    return Ok;
}

int cmd_to_aia(const Options& opt, std::ostream& out) {
    emit(opt, out, print_model(as_aia(load(opt.file))));
    return Ok;
}

int cmd_tester(const Options& opt, std::ostream& out) {
    const Tester t = build_tester(as_aia(load(opt.file)), opt.limits());
    emit(opt, out, print_model(t.automaton()));
    return Ok;
}

std::string numbered(const std::string& stem, std::size_t k, const std::string& ext) {
    char digits[32];
    std::snprintf(digits, sizeof digits, "%03zu", k);
    return stem + "_" + digits + ext;
}

int cmd_testgen(const Options& opt, std::ostream& out) {
    if (opt.output.empty()) {
        throw UsageFailure("testgen needs an output directory (-o)");
    }
    if (!(opt.p_stop >= 0.0 && opt.p_stop <= 1.0)) {
        throw UsageFailure("--p-stop must lie in [0, 1]");
    }
    const AlternatingIA s = as_aia(load(opt.file));
    const std::filesystem::path dir(opt.output);
    std::filesystem::create_directories(dir);
    for (std::size_t k = 0; k < opt.count; ++k) {
        const SingularOptions options{opt.seed + k, opt.depth, opt.p_stop};
        const SingularSpec spec = gen_singular(s, options, opt.limits());
        const Tester t = build_tester(spec.automaton, opt.limits());
        const std::string spec_file = (dir / numbered("singular", k, ".aia")).string();
        const std::string tester_file = (dir / numbered("tester", k, ".ia")).string();
        write_file(spec_file, print_model(spec.automaton));
        write_file(tester_file, print_model(t.automaton()));
        out << spec_file << ' ' << tester_file << '\n';
    }
    return Ok;
}

int cmd_run(const Options& opt, std::ostream& out) {
    const Model tm = load(opt.file);
    const Tester t = Tester::from_ia(require_ia(tm, opt.file));
    const InterfaceAutomaton impl = require_ia(load(opt.second), opt.second);

    if (opt.exhaustive) {
        const Verdict v = verdict_exhaustive(t, impl, opt.limits());
        const std::string w = format_observations(t.spec_alphabet(), v.witness);
        if (opt.json) {
            out << json{{"verdict", v.failed() ? "FAIL" : "PASS"},
                        {"witness", v.failed() ? json(w) : json(nullptr)},
                        {"stats", {{"explored_states", v.explored_states}}}}
                       .dump()
                << '\n';
        } else {
            out << format_verdict(t, impl, v, false);
        }
        return v.failed() ? PropertyFails : Ok;
    }

    std::vector<Verdict> verdicts(opt.runs);
    std::vector<std::exception_ptr> errors(opt.runs);
    const std::size_t jobs =
        std::clamp<std::size_t>(opt.jobs ? opt.jobs : std::thread::hardware_concurrency(), 1,
                                std::max<std::size_t>(opt.runs, 1));
    auto worker = [&](std::size_t first) {
        for (std::size_t k = first; k < opt.runs; k += jobs) {
            try {
                verdicts[k] = run_random(t, impl, opt.seed + k, opt.max_steps);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) {
            pool.emplace_back(worker, j);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }
    for (const std::exception_ptr& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    std::size_t failed = 0;
    std::size_t inconclusive = 0;
    std::size_t steps = 0;
    std::optional<std::size_t> first_failure;
    for (std::size_t k = 0; k < opt.runs; ++k) {
        const Verdict& v = verdicts[k];
        failed += v.failed();
        inconclusive += v.inconclusive;
        steps += v.log.size();
        if (v.failed() && !first_failure) {
            first_failure = k;
        }
    }
    if (opt.json) {
        json runs = json::array();
        for (std::size_t k = 0; k < opt.runs; ++k) {
            const Verdict& v = verdicts[k];
            runs.push_back({{"seed", opt.seed + k},
                            {"verdict", v.failed() ? "FAIL" : "PASS"},
                            {"steps", v.log.size()},
                            {"inconclusive", v.inconclusive}});
        }
        json witness = nullptr;
        if (first_failure) {
            witness = format_observations(t.spec_alphabet(), verdicts[*first_failure].witness);
        }
        out << json{{"verdict", failed ? "FAIL" : "PASS"},
                    {"witness", witness},
                    {"stats",
                     {{"runs", opt.runs},
                      {"failed", failed},
                      {"inconclusive", inconclusive},
                      {"steps", steps},
                      {"per_run", runs}}}}
                   .dump()
            << '\n';
    } else {
        for (std::size_t k = 0; k < opt.runs; ++k) {
            out << "# run " << k << " seed " << opt.seed + k << '\n'
                << format_verdict(t, impl, verdicts[k], opt.log);
        }
    }
    return failed ? PropertyFails : Ok;
}

int cmd_dot(const Options& opt, std::ostream& out) {
    const Model m = load(opt.file);
    if (const auto* i = std::get_if<InterfaceAutomaton>(&m)) {
        const bool verdicts = i->find_state("pass") && i->find_state("fail");
        emit(opt, out, to_dot(*i, verdicts));
    } else {
        emit(opt, out, to_dot(std::get<AlternatingIA>(m)));
    }
    return Ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Alternating interface automata: refinement, determinization and testing",
                 "aiatool"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.add_option("--cap", opt.cap, "Maximal number of configurations an exploration may visit")
        ->check(CLI::PositiveNumber);
    app.add_flag("--json", opt.json, "Machine-readable output for member, refine and run");

    auto file_arg = [&](CLI::App* sub, std::string& target, const char* name) {
        sub->add_option(name, target, "Model file")->required()->check(CLI::ExistingFile);
    };
    auto output_arg = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("-o,--output", opt.output, "Output file");
        if (required) {
            o->required();
        }
    };

    std::vector<std::pair<CLI::App*, int (*)(const Options&, std::ostream&)>> commands;

    auto* check = app.add_subcommand("check", "Validate a model file");
    file_arg(check, opt.file, "FILE");
    check->add_flag("--tester", opt.tester_check, "Also check the tester invariants");
    commands.emplace_back(check, cmd_check);

    auto* member = app.add_subcommand("member", "Membership of an input-failure trace");
    file_arg(member, opt.file, "FILE");
    member->add_option("--trace", opt.trace, "Trace such as \"?a !x ~b\"")->required();
    commands.emplace_back(member, cmd_member);

    auto* det_cmd = app.add_subcommand("det", "Determinize");
    file_arg(det_cmd, opt.file, "FILE");
    output_arg(det_cmd, false);
    commands.emplace_back(det_cmd, cmd_det);

    auto* refine = app.add_subcommand("refine", "Check LEFT refines RIGHT");
    file_arg(refine, opt.file, "LEFT");
    file_arg(refine, opt.second, "RIGHT");
    commands.emplace_back(refine, cmd_refine);

    auto* compose = app.add_subcommand("compose", "Conjunction or disjunction of two models");
    auto* and_flag = compose->add_flag("--and", opt.use_and, "Conjunction");
    compose->add_flag("--or", opt.use_or, "Disjunction")->excludes(and_flag);
    file_arg(compose, opt.file, "F1");
    file_arg(compose, opt.second, "F2");
    output_arg(compose, false);
    commands.emplace_back(compose, cmd_compose);

    auto* to_ia_cmd = app.add_subcommand("to-ia", "Translate to an interface automaton");
    file_arg(to_ia_cmd, opt.file, "FILE");
    output_arg(to_ia_cmd, false);
    commands.emplace_back(to_ia_cmd, cmd_to_ia);

    auto* to_aia_cmd = app.add_subcommand("to-aia", "Translate to an alternating automaton");
    file_arg(to_aia_cmd, opt.file, "FILE");
    output_arg(to_aia_cmd, false);
    commands.emplace_back(to_aia_cmd, cmd_to_aia);

    auto* tester = app.add_subcommand("tester", "Build the tester of a specification");
    file_arg(tester, opt.file, "SPEC");
    output_arg(tester, false);
    commands.emplace_back(tester, cmd_tester);

    auto* testgen = app.add_subcommand("testgen", "Generate singular specifications and testers");
    file_arg(testgen, opt.file, "SPEC");
    testgen->add_option("--seed", opt.seed, "Seed of the first test case");
    testgen->add_option("--depth", opt.depth, "Maximal tree depth")->check(CLI::PositiveNumber);
    testgen->add_option("--p-stop", opt.p_stop, "Probability of cutting a branch to top");
    testgen->add_option("--count", opt.count, "Number of test cases");
    output_arg(testgen, true);
    commands.emplace_back(testgen, cmd_testgen);

    auto* run = app.add_subcommand("run", "Execute a tester against an implementation");
    file_arg(run, opt.file, "TESTER");
    file_arg(run, opt.second, "IMPL");
    auto* exhaustive = run->add_flag("--exhaustive", opt.exhaustive, "Explore every execution");
    run->add_option("--seed", opt.seed, "Seed of the first run")->excludes(exhaustive);
    run->add_option("--runs", opt.runs, "Number of random runs")
        ->check(CLI::PositiveNumber)
        ->excludes(exhaustive);
    run->add_option("--max-steps", opt.max_steps, "Step bound of a random run")
        ->excludes(exhaustive);
    run->add_option("--jobs", opt.jobs, "Worker threads (0: one per core)")->excludes(exhaustive);
    run->add_flag("--log", opt.log, "Print every step of the random runs")->excludes(exhaustive);
    commands.emplace_back(run, cmd_run);

    auto* dot = app.add_subcommand("dot", "Graphviz rendering");
    file_arg(dot, opt.file, "FILE");
    output_arg(dot, false);
    commands.emplace_back(dot, cmd_dot);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? Ok : UsageError;
    }

    try {
        for (const auto& [sub, handler] : commands) {
            if (sub->parsed()) {
                return handler(opt, out);
            }
        }
        err << "error: no command given\n";
        return UsageError;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return ResourceCap;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const UsageFailure& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }
}

} // namespace aia::cli
