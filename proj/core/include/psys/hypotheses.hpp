#pragma once

#include <map>
#include <string>
#include <vector>

#include "psys/common.hpp"
#include "psys/entropy_profile.hpp"
#include "psys/pressure_law.hpp"

namespace psys {

enum class Verdict { pass, fail, vacuous_pass, indicative_pass, inconclusive };

const char* verdict_name(Verdict v);

/// pass, vacuous_pass and indicative_pass all count as "did not fail".
bool verdict_ok(Verdict v);

/// One checked condition. For the law-only checks (structure, wave-speed
/// integrals, nonlinearity ratios) the box's x axis carries the entropy value
/// S directly; for the entropy-coupling check it is the spatial coordinate.
struct ConditionRecord {
    std::string id;   // stable short id: "H1.1" ... "H4.4"
    std::string name; // role name, e.g. "pressure_decreasing"
    StateBox box{};
    Verdict verdict = Verdict::fail;
    double margin = 0.0; // worst relative margin over all samples (>= 0 when ok)
    double witness_tau = 0.0;
    double witness_axis = 0.0; // S or x, matching the box's second axis
    std::map<std::string, double> stats; // best constants and diagnostics
    std::string note;
};

struct HypothesisReport {
    std::string check; // "h1" | "h2" | "h3" | "h4"
    std::vector<ConditionRecord> conditions;

    bool passed() const;
    const ConditionRecord* find(const std::string& id) const;
};

/// Structural sign conditions: p > 0, p_tau < 0, p_tautau > 0 on the box, and
/// the vacuum/far-field limits probed by log-log slopes at the box edges
/// (reported as indicative only).
HypothesisReport check_h1(const PressureLaw& law, const StateBox& box, int n);

/// Wave-speed integral classification at fixed entropy: integral of
/// sqrt(-p_tau) must diverge toward tau -> 0 and converge toward infinity.
/// Partial sums are accumulated octave by octave and the per-octave growth
/// ratio fitted; non-monotone partial sums give "inconclusive".
HypothesisReport check_h2(const PressureLaw& law, double S);

/// Nonlinearity ratios with the law's declared constants:
///   2(k-1)(-p_tau)^2 >= k p p_tautau,
///   (5+A) p_tautau^2 - 4 p_tau p_tautautau >= 0,
///   p p_tautau <= l1 c^(7/2)   and   l2 p c^(7/2) <= p p_tautau.
/// Also reports the pointwise-best constants over the box.
HypothesisReport check_h3(const PressureLaw& law, const StateBox& box, int n);

/// Entropy-coupling sandwiches with declared k1, k2, l3..l8: each mu-derivative
/// must sit between (m'/m)/c_hi and (m'/m)/c_lo multiples of its base quantity.
/// Margins are evaluated as written (orientation presumes m' >= 0); the
/// swapped-constant orientation is reported alongside for m' < 0 segments.
HypothesisReport check_h4(const PressureLaw& law, const EntropyProfile& profile,
                          const StateBox& box, int n);

struct DerivativeConsistency {
    double max_rel_error = 0.0;
    std::string worst_partial;
    double witness_tau = 0.0;
    double witness_S = 0.0;
};

/// Centered finite differences of every declared partial against its parent
/// quantity at interior sample points; returns the worst relative error.
DerivativeConsistency derivative_consistency(const PressureLaw& law,
                                             const StateBox& box, int n);

} // namespace psys
