#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "wdetect/automaton.hpp"
#include "wdetect/ep_set.hpp"
#include "wdetect/estimator.hpp"
#include "wdetect/oracle.hpp"
#include "wdetect/self_composition.hpp"
#include "wdetect/verify.hpp"

namespace wdetect::io {

inline constexpr int kFormatVersion = 1;

/// Malformed document. `where` is a JSON path such as "transitions[2].weight[0]"
/// or a "line L, column C" position for syntax errors.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, const std::string& what);
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

RawAutomaton parse_raw(const std::string& text);
/// parse_raw + validate; throws ParseError or ValidationError.
WeightedAutomaton parse_automaton(const std::string& text);

nlohmann::ordered_json to_json(const WeightedAutomaton& a);
/// Two-space indented document with a trailing newline.
std::string serialize(const WeightedAutomaton& a);

/// Weight in the units of the original automaton: entries divided by `factor`.
/// k = 1 gives a plain number string, k > 1 "(a, b, ...)".
std::string weight_text(const IntVec& v, std::int64_t factor = 1);

nlohmann::ordered_json to_json(const EPSet& s);
nlohmann::ordered_json to_json(const LabelCell& c, std::int64_t factor = 1);
nlohmann::ordered_json to_json(const SelfComposition& cc, const WeightedAutomaton& a, std::int64_t factor = 1);
nlohmann::ordered_json to_json(const EstimatorAutomaton& e, const WeightedAutomaton& a, std::int64_t factor = 1);
nlohmann::ordered_json to_json(const Lasso& l, const WeightedAutomaton& a);
nlohmann::ordered_json to_json(const Counterexample& c, const WeightedAutomaton& a);
/// Witnesses are resolved against the structures stored in the report.
nlohmann::ordered_json to_json(const Verdict& v, const Report& r);
nlohmann::ordered_json to_json(const Report& r);

/// "q0 -u/10-> q1"
std::string describe_transition(const WeightedAutomaton& a, TransitionId t);

std::string to_dot(const WeightedAutomaton& a);
std::string to_dot(const SelfComposition& cc, const WeightedAutomaton& a);
std::string to_dot(const EstimatorAutomaton& e, const WeightedAutomaton& a, std::int64_t factor = 1);

std::string read_text(const std::string& path);  // "-" reads stdin

}  // namespace wdetect::io
