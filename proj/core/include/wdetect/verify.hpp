#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wdetect/automaton.hpp"
#include "wdetect/estimator.hpp"
#include "wdetect/reach.hpp"
#include "wdetect/self_composition.hpp"
#include "wdetect/verdict.hpp"

namespace wdetect {

/// SPD from the detector. When an observer is passed the observer-based check runs
/// as well, and a disagreement throws std::logic_error.
Verdict check_spd(const WeightedAutomaton& a, const ReachTables& reach, const EstimatorAutomaton& detector,
                  const EstimatorAutomaton* observer = nullptr);
/// Observer-only evaluation of SPD (no singleton on some reachable cycle, or an
/// ambiguous state reaching an unobservable cycle).
Verdict check_spd_observer(const WeightedAutomaton& a, const ReachTables& reach, const EstimatorAutomaton& observer);
Verdict check_wd(const WeightedAutomaton& a, const ReachTables& reach, const EstimatorAutomaton& observer);
Verdict check_wpd(const WeightedAutomaton& a, const ReachTables& reach, const EstimatorAutomaton& observer);

struct CheckOptions {
    SolverBudget budget;
    std::size_t bounded_length = 8;
    bool cross_check_spd = true;
};

/// Normalized, integer-scaled copy of the input on which all structures and
/// witnesses are expressed. Weights of the input equal weights here divided by factor.
struct Prepared {
    WeightedAutomaton automaton;
    std::int64_t factor = 1;
};
Prepared prepare(const WeightedAutomaton& a);

/// Verdicts plus the structures their witnesses index into. SD witnesses refer to
/// `cc`, SPD witnesses to `detector`, WD/WPD witnesses to `observer`.
struct Report {
    Prepared prepared;
    std::vector<Verdict> verdicts;  // in the order requested
    std::optional<ReachTables> reach;
    std::optional<SelfComposition> cc;
    std::optional<EstimatorAutomaton> observer, detector;
};

/// Builds only the structures the requested properties need.
Report check_properties(const WeightedAutomaton& a, const std::vector<Property>& props, const CheckOptions& opt = {});
Report check_all(const WeightedAutomaton& a, const CheckOptions& opt = {});
Verdict check_property(const WeightedAutomaton& a, Property p, const CheckOptions& opt = {});

/// Exit code contract: HOLDS 0, FAILS 1, UNKNOWN 2; for several verdicts any FAILS
/// wins, then any UNKNOWN.
int exit_code(const std::vector<Verdict>& verdicts);

}  // namespace wdetect
