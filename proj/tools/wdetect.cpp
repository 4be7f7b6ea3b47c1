// wdetect: command line front end for the detectability library.
// Exit codes: 0 HOLDS / success, 1 FAILS, 2 UNKNOWN, 3 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wdetect/corpus.hpp"
#include "wdetect/io.hpp"
#include "wdetect/oracle.hpp"
#include "wdetect/verify.hpp"

namespace {

using namespace wdetect;
using ojson = nlohmann::ordered_json;

constexpr int kInputError = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

WeightedAutomaton load(const std::string& path) { return io::parse_automaton(io::read_text(path)); }

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << text;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::vector<std::int64_t> parse_int_list(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("not an integer list: '" + s + "'");
        }
    }
    return out;
}

ojson structure_json(const WeightedAutomaton& a) {
    auto r = structure_report(a);
    return ojson{{"deadlock_free", r.deadlock_free},
                 {"divergence_free", r.divergence_free},
                 {"deterministic", r.deterministic},
                 {"unambiguous_checked_to_bound", r.unambiguous_checked_to_bound},
                 {"all_observable", r.all_observable},
                 {"reachable_states", a.describe(r.reachable_states)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detectability of labeled weighted automata over (Q^k,+)"};
    app.require_subcommand(1);

    std::string file, out_path, obs_text, property;
    bool dot = false;
    std::size_t budget = SolverBudget{}.max_nodes;
    std::size_t horizon = 8;

    auto* validate_cmd = app.add_subcommand("validate", "Check a document and report structural flags");
    validate_cmd->add_option("file", file, "Automaton JSON ('-' for stdin)")->required();

    auto* normalize_cmd = app.add_subcommand("normalize", "Zero initial weights via a fresh initial state");
    normalize_cmd->add_option("file", file)->required();
    normalize_cmd->add_option("-o,--output", out_path);

    auto add_structure = [&](const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("file", file)->required();
        c->add_flag("--dot", dot, "Graphviz output instead of JSON");
        c->add_option("-o,--output", out_path);
        c->add_option("--budget", budget, "Search-node budget of the k > 1 path solver");
        return c;
    };
    auto* selfcomp_cmd = add_structure("selfcomp", "Self-composition of the normalized, scaled automaton");
    auto* observer_cmd = add_structure("observer", "Observer with label cells");
    auto* detector_cmd = add_structure("detector", "Detector with label cells");

    auto* check_cmd = app.add_subcommand("check", "Decide sd, spd, wd, wpd or all");
    check_cmd->add_option("property", property)->required()->check(CLI::IsMember({"sd", "spd", "wd", "wpd", "all"}));
    check_cmd->add_option("file", file)->required();
    check_cmd->add_option("--budget", budget);
    check_cmd->add_option("-o,--output", out_path);

    auto* estimate_cmd = app.add_subcommand("estimate", "Current-state estimate for an observation");
    estimate_cmd->add_option("file", file)->required();
    estimate_cmd->add_option("--obs", obs_text, "Accumulated weights, e.g. \"(a,1);(b,3)\"")->required();

    auto* gen_cmd = app.add_subcommand("gen", "Generate automata");
    gen_cmd->require_subcommand(1);
    std::string weights_text, fixture_name;
    std::int64_t target = 0;
    auto* gen_ss = gen_cmd->add_subcommand("subset-sum", "Reduction instance");
    gen_ss->add_option("--weights", weights_text, "Comma separated positive integers")->required();
    gen_ss->add_option("--target", target)->required();
    std::uint64_t seed = 0;
    RandomOptions ropt;
    auto* gen_random = gen_cmd->add_subcommand("random", "Seeded random automaton");
    gen_random->add_option("--seed", seed);
    gen_random->add_option("--states", ropt.max_states, "Upper bound on |Q|");
    gen_random->add_option("--events", ropt.max_events, "Upper bound on |E|");
    gen_random->add_option("--min-weight", ropt.min_weight);
    gen_random->add_option("--max-weight", ropt.max_weight);
    gen_random->add_option("--unobservable", ropt.unobservable_fraction);
    gen_random->add_option("--density", ropt.density);
    auto* gen_fixture = gen_cmd->add_subcommand("fixture", "Built-in worked example");
    gen_fixture->add_option("name", fixture_name)->required()->check(CLI::IsMember(fixture_names()));
    for (auto* c : {gen_ss, gen_random, gen_fixture}) c->add_option("-o,--output", out_path);

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference computations");
    oracle_cmd->require_subcommand(1);
    auto* oracle_est = oracle_cmd->add_subcommand("estimate", "Estimate from explicit runs");
    oracle_est->add_option("file", file)->required();
    oracle_est->add_option("--obs", obs_text)->required();
    oracle_est->add_option("--horizon", horizon, "Maximum run length");
    auto* oracle_fal = oracle_cmd->add_subcommand("falsify", "Search lassos violating a property");
    oracle_fal->add_option("property", property)->required()->check(CLI::IsMember({"sd", "spd", "wd", "wpd"}));
    oracle_fal->add_option("file", file)->required();
    oracle_fal->add_option("--horizon", horizon, "Maximum stem and cycle length");

    auto* export_cmd = app.add_subcommand("export", "Graphviz export of the automaton or a derived structure");
    std::string what = "automaton";
    export_cmd->add_option("file", file)->required();
    export_cmd->add_flag("--dot", dot, "Graphviz output (the only format)");
    export_cmd->add_option("--what", what)->check(CLI::IsMember({"automaton", "selfcomp", "observer", "detector"}));
    export_cmd->add_option("-o,--output", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    }

    try {
        if (*validate_cmd) {
            auto a = load(file);
            emit(dump({{"valid", true},
                       {"k", a.dimension()},
                       {"states", a.num_states()},
                       {"transitions", a.num_transitions()},
                       {"normalized", a.is_normalized()},
                       {"structure", structure_json(a)}}),
                 "");
            return 0;
        }
        if (*normalize_cmd) {
            emit(io::serialize(normalize(load(file))), out_path);
            return 0;
        }
        if (*selfcomp_cmd || *observer_cmd || *detector_cmd ||
            (*export_cmd && what != "automaton")) {
            auto prepared = prepare(load(file));
            const auto& m = prepared.automaton;
            ReachTables reach(m);
            const bool as_dot = dot || *export_cmd;
            std::string text;
            if (*selfcomp_cmd || what == "selfcomp") {
                auto cc = build_self_composition(m, reach, {SolverBudget{budget}});
                text = as_dot ? io::to_dot(cc, m) : dump(io::to_json(cc, m, prepared.factor));
            } else {
                bool obs = *observer_cmd || what == "observer";
                auto ea = obs ? build_observer(m, reach) : build_detector(m, reach);
                text = as_dot ? io::to_dot(ea, m, prepared.factor) : dump(io::to_json(ea, m, prepared.factor));
            }
            emit(text, out_path);
            return 0;
        }
        if (*export_cmd) {
            emit(io::to_dot(load(file)), out_path);
            return 0;
        }
        if (*check_cmd) {
            auto a = load(file);
            CheckOptions opt;
            opt.budget.max_nodes = budget;
            std::vector<Property> props;
            if (property == "all")
                props = {Property::sd, Property::spd, Property::wd, Property::wpd};
            else
                props = {*parse_property(property)};
            auto report = check_properties(a, props, opt);
            emit(dump(io::to_json(report)), out_path);
            return exit_code(report.verdicts);
        }
        if (*estimate_cmd) {
            auto a = load(file);
            auto obs = parse_observation(obs_text, a.dimension());
            auto x = oracle_estimate(a, obs);
            emit(dump({{"observation", to_string(obs)}, {"estimate", a.describe(x)}}), "");
            return 0;
        }
        if (*gen_ss) {
            emit(io::serialize(subset_sum_automaton(parse_int_list(weights_text), target)), out_path);
            return 0;
        }
        if (*gen_random) {
            emit(io::serialize(random_automaton(seed, ropt)), out_path);
            return 0;
        }
        if (*gen_fixture) {
            emit(io::serialize(load_fixture(fixture_name).automaton), out_path);
            return 0;
        }
        if (*oracle_est) {
            auto a = load(file);
            auto obs = parse_observation(obs_text, a.dimension());
            auto x = oracle_estimate_by_runs(a, obs, horizon);
            emit(dump({{"observation", to_string(obs)}, {"horizon", horizon}, {"estimate", a.describe(x)}}), "");
            return 0;
        }
        if (*oracle_fal) {
            auto a = prepare(load(file)).automaton;
            auto cx = oracle_falsify(a, *parse_property(property), horizon);
            ojson out{{"property", property}, {"horizon", horizon}};
            out["counterexample"] = cx ? io::to_json(*cx, a) : ojson(nullptr);
            emit(dump(out), "");
            return cx ? 1 : 0;
        }
    } catch (const io::ParseError& e) {
        std::cerr << dump({{"error", "parse"}, {"where", e.where()}, {"message", e.what()}});
        return kInputError;
    } catch (const ValidationError& e) {
        std::cerr << dump({{"error", "validation"}, {"violations", e.violations()}});
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << dump({{"error", "input"}, {"message", e.what()}});
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << dump({{"error", "input"}, {"message", e.what()}});
        return kInputError;
    } catch (const std::runtime_error& e) {
        // unreadable files land here
        std::cerr << dump({{"error", "input"}, {"message", e.what()}});
        return kInputError;
    }
    return 0;
}
