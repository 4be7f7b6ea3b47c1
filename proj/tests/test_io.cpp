#include <doctest.h>

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "support.hpp"
#include "wdetect/corpus.hpp"
#include "wdetect/io.hpp"

using namespace wdetect;

namespace {

std::string where_of(const std::string& text) {
    try {
        io::parse_automaton(text);
    } catch (const io::ParseError& e) {
        return e.where();
    }
    return "<no error>";
}

const char* kMinimal = R"({"k": 1, "states": ["p"], "initial": [{"state": "p", "weight": ["0"]}],
  "events": [{"name": "a", "label": "a"}],
  "transitions": [{"from": "p", "event": "a", "to": "p", "weight": ["-3/6"]}]})";

}  // namespace

TEST_SUITE("io") {

TEST_CASE("round trip is byte-stable") {
    for (const auto& name : fixture_names()) {
        auto text = testsupport::read_file(std::string(WDETECT_FIXTURE_DIR) + "/" + name + ".json");
        auto a = io::parse_automaton(text);
        CHECK(io::serialize(a) == text);
        CHECK(io::parse_automaton(io::serialize(a)) == a);
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto a = random_automaton(seed);
        CHECK(io::parse_automaton(io::serialize(a)) == a);
    }
}

TEST_CASE("weights are canonicalised") {
    auto a = io::parse_automaton(kMinimal);
    CHECK(a.transition(0).weight == WeightVector({Rational(-1, 2)}));
    CHECK(io::serialize(a).find("\"-1/2\"") != std::string::npos);
    CHECK(io::weight_text({3}, 6) == "1/2");
    CHECK(io::weight_text({3, -4}, 2) == "(3/2, -2)");
}

TEST_CASE("errors carry their location") {
    std::string bad_weight = kMinimal;
    bad_weight.replace(bad_weight.find("-3/6"), 4, "1/0");
    CHECK(where_of(bad_weight) == "transitions[0].weight[0]");
    std::string numeric = kMinimal;
    numeric.replace(numeric.find("\"-3/6\""), 6, "2");
    CHECK(where_of(numeric) == "transitions[0].weight[0]");
    CHECK(where_of(R"({"k": 0})") == "k");
    CHECK(where_of(R"({"k": 1, "states": ["p"], "initial": [{"weight": ["0"]}], "events": [], "transitions": []})") ==
          "initial[0]");
    CHECK(where_of(R"({"k": 1, "format_version": 9})") == "format_version");
    auto syntax = where_of("{\n  \"k\": 1,\n  oops\n}");
    CHECK(syntax.find("line 3") != std::string::npos);
    CHECK_THROWS_AS(io::parse_automaton("[1, 2]"), io::ParseError);
    std::string undeclared = kMinimal;
    undeclared.replace(undeclared.find("\"to\": \"p\""), 9, "\"to\": \"z\"");
    CHECK_THROWS_AS(io::parse_automaton(undeclared), ValidationError);
}

TEST_CASE("EPSet JSON lists the canonical parts") {
    auto j = io::to_json(EPSet::at_least(2) - EPSet::singleton(11));
    CHECK(j["text"].is_string());
    CHECK(j["up_start"] == 12);
    CHECK(j["middle"].size() == 9);
    CHECK(j["up"]["period"] == 1);
    CHECK(j["down"]["residues"].empty());
}

TEST_CASE("DOT export of CC(A1) has the expected edge multiset") {
    auto a = testsupport::prepared_fixture("A1");
    auto dot = io::to_dot(build_self_composition(a), a);
    std::map<std::string, std::string> names;
    std::regex node(R"re(\s*(p\d+) \[label="([^"]*)"\];)re");
    std::regex edge(R"re(\s*(p\d+) -> (p\d+) \[label="\(([^,]*),([^)]*)\)"\];)re");
    std::multiset<std::string> edges;
    std::istringstream in(dot);
    std::string line;
    std::vector<std::string> edge_lines;
    while (std::getline(in, line)) {
        std::smatch m;
        if (std::regex_match(line, m, node)) names[m[1]] = m[2];
        if (std::regex_match(line, m, edge)) edge_lines.push_back(line);
    }
    for (const auto& l : edge_lines) {
        std::smatch m;
        std::regex_match(l, m, edge);
        edges.insert(names[m[1]] + " " + std::string(m[3]) + std::string(m[4]) + " " + names[m[2]]);
    }
    CHECK(names.size() == 7);
    CHECK(edges == std::multiset<std::string>{"(q0,q0) aa (q1,q1)", "(q0,q0) aa (q1,q2)", "(q0,q0) aa (q2,q1)",
                                              "(q0,q0) aa (q2,q2)", "(q1,q1) bb (q3,q3)", "(q1,q2) bb (q3,q3)",
                                              "(q2,q1) bb (q3,q3)", "(q2,q2) bb (q3,q3)", "(q3,q3) aa (q4,q4)",
                                              "(q4,q4) aa (q4,q4)"});
}

TEST_CASE("automaton DOT marks unobservable transitions") {
    auto a = load_fixture("A0").automaton;
    auto dot = io::to_dot(a);
    CHECK(std::count(dot.begin(), dot.end(), '\n') > 5);
    CHECK(dot.find("u/10\", style=dashed") != std::string::npos);
    CHECK(dot.find("a/1\"]") != std::string::npos);
    CHECK(io::describe_transition(a, 0) == "q0 -u/10-> q1");
}

TEST_CASE("reports serialise every verdict") {
    auto r = check_all(load_fixture("A1").automaton);
    auto j = io::to_json(r);
    std::string text = j.dump();
    for (const char* p : {"SD", "SPD", "WD", "WPD"}) CHECK(text.find(std::string("\"") + p + "\"") != std::string::npos);
    CHECK(text.find("FAILS") != std::string::npos);
}

TEST_CASE("estimator JSON divides by the scaling factor") {
    AutomatonBuilder b(1);
    b.state("p").state("q").event("a", "a");
    b.initial("p", WeightVector(1));
    b.transition("p", "a", "q", WeightVector({Rational(1, 2)}));
    auto prepared = prepare(b.build());
    CHECK(prepared.factor == 2);
    auto obs = build_observer(prepared.automaton);
    auto j = io::to_json(obs, prepared.automaton, prepared.factor);
    CHECK(j.dump().find("\"1/2\"") != std::string::npos);
}

}  // TEST_SUITE
