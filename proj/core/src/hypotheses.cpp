#include "psys/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psys/quadrature.hpp"

namespace psys {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::vacuous_pass: return "vacuous-pass";
        case Verdict::indicative_pass: return "indicative-pass";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

bool verdict_ok(Verdict v) {
    return v == Verdict::pass || v == Verdict::vacuous_pass ||
           v == Verdict::indicative_pass;
}

bool HypothesisReport::passed() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const ConditionRecord& c) { return verdict_ok(c.verdict); });
}

const ConditionRecord* HypothesisReport::find(const std::string& id) const {
    for (const auto& c : conditions)
        if (c.id == id) return &c;
    return nullptr;
}

namespace {

constexpr double kMarginSlack = 1e-12; // floating-point slack on pass margins
constexpr double kTiny = 1e-300;

std::vector<double> geometric_samples(double lo, double hi, int n) {
    if (n < 2) throw ConfigError("hypothesis check: need n >= 2 samples per axis");
    if (!(lo > 0.0 && hi > lo))
        throw DomainError("hypothesis check: need 0 < tau_lo < tau_hi, got [" +
                          fmt17(lo) + ", " + fmt17(hi) + "]");
    std::vector<double> s(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) s[i] = lo * std::exp(i * step);
    s.front() = lo;
    s.back() = hi;
    return s;
}

std::vector<double> uniform_samples(double lo, double hi, int n) {
    if (n < 2) throw ConfigError("hypothesis check: need n >= 2 samples per axis");
    if (!(hi >= lo))
        throw DomainError("hypothesis check: axis interval is empty: [" + fmt17(lo) +
                          ", " + fmt17(hi) + "]");
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = lo + (hi - lo) * i / (n - 1);
    s.back() = hi;
    return s;
}

/// Tracks the minimum of a margin stream together with its witness point.
struct Worst {
    double margin = std::numeric_limits<double>::infinity();
    double tau = 0.0, axis = 0.0;
    void update(double m, double t, double a) {
        if (m < margin) {
            margin = m;
            tau = t;
            axis = a;
        }
    }
    void commit(ConditionRecord& rec) const {
        rec.margin = margin;
        rec.witness_tau = tau;
        rec.witness_axis = axis;
        rec.verdict = margin >= -kMarginSlack ? Verdict::pass : Verdict::fail;
    }
};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void update(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool seen() const { return lo <= hi; }
};

template <typename F>
double guarded(F&& f, const char* what, double tau, double axis2, const char* axis2name) {
    try {
        const double v = f();
        if (!std::isfinite(v))
            throw DomainError(std::string(what) + " is not finite");
        return v;
    } catch (const std::exception& e) {
        throw DomainError(std::string("law evaluation failed at tau=") + fmt17(tau) +
                          ", " + axis2name + "=" + fmt17(axis2) + ": " + e.what());
    }
}

/// Log-log slope of p at fixed S, centered at tau.
double edge_slope(const PressureLaw& law, double tau, double S) {
    const double f = 1.002;
    const double hi = guarded([&] { return law.p(tau * f, S); }, "p", tau * f, S, "S");
    const double lo = guarded([&] { return law.p(tau / f, S); }, "p", tau / f, S, "S");
    if (!(hi > 0.0 && lo > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::log(hi / lo) / (2.0 * std::log(f));
}

struct OctaveFit {
    double alpha = 0.0;   // per-doubling growth exponent of partial-sum increments
    double spread = 0.0;  // stability of that exponent over the fitted window
    bool conclusive = false;
};

/// Fit increments[i+1]/increments[i] ~ 2^alpha over the last few octaves.
OctaveFit fit_octaves(const std::vector<double>& inc) {
    OctaveFit fit;
    const std::size_t n = inc.size();
    if (n < 4) return fit;
    for (double v : inc)
        if (!(v >= 0.0) || !std::isfinite(v)) return fit; // non-monotone partial sums
    const std::size_t use = std::min<std::size_t>(8, n - 1);
    std::vector<double> logr;
    logr.reserve(use);
    for (std::size_t i = n - 1 - use; i + 1 < n; ++i) {
        if (inc[i] <= 0.0) {
            // vanished increments: the integral has effectively terminated
            logr.push_back(-60.0);
            continue;
        }
        logr.push_back(std::log2(std::max(inc[i + 1], kTiny) / inc[i]));
    }
    std::vector<double> sorted = logr;
    std::sort(sorted.begin(), sorted.end());
    fit.alpha = sorted[sorted.size() / 2];
    for (double v : logr) fit.spread = std::max(fit.spread, std::abs(v - fit.alpha));
    fit.conclusive = fit.spread < 0.1 || fit.alpha < -5.0;
    return fit;
}

std::string segment_sign_note(const EntropyProfile& profile, double a, double b) {
    std::string note = "m' sign by segment:";
    for (const auto& seg : profile.monotone_segments(a, b)) {
        note += " [" + fmt17(seg.x_lo) + "," + fmt17(seg.x_hi) + "]:";
        note += seg.sign > 0 ? "+" : (seg.sign < 0 ? "-" : "0");
    }
    return note;
}

} // namespace

HypothesisReport check_h1(const PressureLaw& law, const StateBox& box, int n) {
    const auto taus = geometric_samples(box.tau_lo, box.tau_hi, n);
    const auto Ss = uniform_samples(box.x_lo, box.x_hi, n);

    struct SignCheck {
        const char* id;
        const char* name;
        Worst worst;
        double max_abs = 0.0;
        double min_val = std::numeric_limits<double>::infinity();
    };
    SignCheck checks[3] = {{"H1.1", "pressure_positive", {}, 0.0, 0.0},
                           {"H1.2", "pressure_decreasing", {}, 0.0, 0.0},
                           {"H1.3", "pressure_convex", {}, 0.0, 0.0}};

    for (double S : Ss) {
        for (double tau : taus) {
            const double vals[3] = {
                guarded([&] { return law.p(tau, S); }, "p", tau, S, "S"),
                guarded([&] { return -law.p_tau(tau, S); }, "-p_tau", tau, S, "S"),
                guarded([&] { return law.p_tautau(tau, S); }, "p_tautau", tau, S, "S")};
            for (int c = 0; c < 3; ++c) {
                checks[c].max_abs = std::max(checks[c].max_abs, std::abs(vals[c]));
                checks[c].worst.update(vals[c], tau, S); // raw value; normalized below
            }
        }
    }

    HypothesisReport report;
    report.check = "h1";
    for (auto& chk : checks) {
        ConditionRecord rec;
        rec.id = chk.id;
        rec.name = chk.name;
        rec.box = box;
        const double scale = std::max(chk.max_abs, kTiny);
        rec.margin = chk.worst.margin / scale;
        rec.witness_tau = chk.worst.tau;
        rec.witness_axis = chk.worst.axis;
        rec.verdict = rec.margin >= -kMarginSlack ? Verdict::pass : Verdict::fail;
        rec.stats["min_value"] = chk.worst.margin;
        report.conditions.push_back(std::move(rec));
    }

    // Limit behavior is probed from local slopes only; it cannot certify the
    // genuine limits, so a passing verdict is flagged indicative.
    ConditionRecord lim;
    lim.id = "H1.4";
    lim.name = "vacuum_and_far_field_limits";
    lim.box = box;
    lim.note = "indicative only: log-log slopes at the box edges";
    Worst worst;
    Range slope_lo_range, slope_hi_range;
    for (double S : Ss) {
        const double slope_lo = edge_slope(law, box.tau_lo, S);
        const double slope_hi = edge_slope(law, box.tau_hi, S);
        if (std::isnan(slope_lo) || std::isnan(slope_hi)) {
            worst.update(-1.0, box.tau_lo, S);
            continue;
        }
        slope_lo_range.update(slope_lo);
        slope_hi_range.update(slope_hi);
        // p must rise toward the vacuum edge and decay toward the far edge
        worst.update(-slope_lo - 0.01, box.tau_lo, S);
        worst.update(-slope_hi - 0.01, box.tau_hi, S);
    }
    lim.margin = worst.margin;
    lim.witness_tau = worst.tau;
    lim.witness_axis = worst.axis;
    lim.verdict = worst.margin >= 0.0 ? Verdict::indicative_pass : Verdict::fail;
    if (slope_lo_range.seen()) {
        lim.stats["edge_slope_at_tau_lo"] = slope_lo_range.hi;
        lim.stats["edge_slope_at_tau_hi"] = slope_hi_range.hi;
    }
    report.conditions.push_back(std::move(lim));
    return report;
}

HypothesisReport check_h2(const PressureLaw& law, double S) {
    const int octaves = 36;
    auto speed = [&](double xi) {
        const double v = -law.p_tau(xi, S);
        if (!(v > 0.0))
            throw DomainError("wave-speed integrand undefined (p_tau >= 0) at tau=" +
                              fmt17(xi) + ", S=" + fmt17(S));
        return std::sqrt(v);
    };

    HypothesisReport report;
    report.check = "h2";

    // toward the vacuum: partial sums over [2^-(j+1), 2^-j]
    {
        std::vector<double> inc;
        double partial = 0.0;
        for (int j = 0; j < octaves; ++j) {
            const double b = std::ldexp(1.0, -j);
            const double v = integrate(speed, 0.5 * b, b, 1e-9, kTiny);
            inc.push_back(v);
            partial += v;
        }
        const OctaveFit fit = fit_octaves(inc);
        ConditionRecord rec;
        rec.id = "H2.1";
        rec.name = "vacuum_wavespeed_divergence";
        rec.box = {std::ldexp(1.0, -octaves), 1.0, S, S};
        rec.witness_tau = std::ldexp(1.0, -octaves);
        rec.witness_axis = S;
        rec.stats["growth_exponent"] = fit.alpha;
        rec.stats["partial_sum"] = partial;
        if (!fit.conclusive) {
            rec.verdict = Verdict::inconclusive;
            rec.margin = 0.0;
            rec.note = "per-octave growth ratio did not stabilize";
        } else {
            rec.margin = fit.alpha + 1e-3;
            rec.verdict = rec.margin >= 0.0 ? Verdict::pass : Verdict::fail;
            if (std::abs(fit.alpha) < 0.02)
                rec.note = "near-critical exponent; classification is sensitive";
        }
        report.conditions.push_back(std::move(rec));
    }

    // toward infinity: partial sums over [2^j, 2^(j+1)]
    {
        std::vector<double> inc;
        double partial = 0.0;
        for (int j = 0; j < octaves; ++j) {
            const double a = std::ldexp(1.0, j);
            const double v = integrate(speed, a, 2.0 * a, 1e-9, kTiny);
            inc.push_back(v);
            partial += v;
        }
        const OctaveFit fit = fit_octaves(inc);
        ConditionRecord rec;
        rec.id = "H2.2";
        rec.name = "far_field_wavespeed_integrable";
        rec.box = {1.0, std::ldexp(1.0, octaves), S, S};
        rec.witness_tau = std::ldexp(1.0, octaves);
        rec.witness_axis = S;
        rec.stats["growth_exponent"] = fit.alpha;
        rec.stats["partial_sum"] = partial;
        if (!fit.conclusive) {
            rec.verdict = Verdict::inconclusive;
            rec.margin = 0.0;
            rec.note = "per-octave growth ratio did not stabilize";
        } else {
            rec.margin = -fit.alpha - 1e-3;
            rec.verdict = rec.margin >= 0.0 ? Verdict::pass : Verdict::fail;
            if (rec.verdict == Verdict::pass) {
                const double r = std::exp2(fit.alpha);
                rec.stats["tail_integral_estimate"] =
                    partial + (r < 1.0 ? inc.back() * r / (1.0 - r) : 0.0);
            }
            if (std::abs(fit.alpha) < 0.02)
                rec.note = "near-critical exponent; classification is sensitive";
        }
        report.conditions.push_back(std::move(rec));
    }
    return report;
}

HypothesisReport check_h3(const PressureLaw& law, const StateBox& box, int n) {
    const DeclaredConstants& dc = law.constants();
    if (!(dc.k > 1.0))
        throw ConfigError("convexity check: declared k must exceed 1, got " +
                          fmt17(dc.k));
    if (!(dc.A > 0.0))
        throw ConfigError("convexity check: declared A must be positive, got " +
                          fmt17(dc.A));
    if (!(dc.l[0] > 0.0 && dc.l[1] > 0.0))
        throw ConfigError("convexity check: declared l1, l2 must be positive");

    const auto taus = geometric_samples(box.tau_lo, box.tau_hi, n);
    const auto Ss = uniform_samples(box.x_lo, box.x_hi, n);

    Worst w_k, w_A, w_up, w_lo;
    Range k_best, A_best, ratio_up, ratio_lo;
    bool finite_k = true;
    double no_k_tau = 0.0, no_k_S = 0.0;

    for (double S : Ss) {
        for (double tau : taus) {
            const double p = guarded([&] { return law.p(tau, S); }, "p", tau, S, "S");
            const double pt =
                guarded([&] { return law.p_tau(tau, S); }, "p_tau", tau, S, "S");
            const double ptt =
                guarded([&] { return law.p_tautau(tau, S); }, "p_tautau", tau, S, "S");
            const double pttt = guarded([&] { return law.p_tautautau(tau, S); },
                                        "p_tautautau", tau, S, "S");
            const double X2 = pt * pt;
            const double Y = p * ptt;

            const double qk = 2.0 * (dc.k - 1.0) * X2 - dc.k * Y;
            w_k.update(qk / std::max({2.0 * (dc.k - 1.0) * X2, std::abs(dc.k * Y),
                                      kTiny}),
                       tau, S);
            const double den = 2.0 * X2 - Y;
            if (den > 0.0) {
                k_best.update(2.0 * X2 / den);
            } else if (finite_k) {
                finite_k = false;
                no_k_tau = tau;
                no_k_S = S;
            }

            const double qa = (5.0 + dc.A) * ptt * ptt - 4.0 * pt * pttt;
            w_A.update(qa / std::max({(5.0 + dc.A) * ptt * ptt,
                                      std::abs(4.0 * pt * pttt), kTiny}),
                       tau, S);
            if (ptt != 0.0) A_best.update(4.0 * pt * pttt / (ptt * ptt) - 5.0);

            if (!(-pt > 0.0))
                throw DomainError("convexity check: p_tau must be negative at tau=" +
                                  fmt17(tau) + ", S=" + fmt17(S));
            const double c72 = std::pow(-pt, 1.75); // c^(7/2) = (-p_tau)^(7/4)
            const double up = dc.l[0] * c72 - p * ptt;
            w_up.update(up / std::max({dc.l[0] * c72, std::abs(p * ptt), kTiny}), tau,
                        S);
            ratio_up.update(p * ptt / c72);
            const double lo = p * ptt - dc.l[1] * p * c72;
            w_lo.update(lo / std::max({std::abs(p * ptt), dc.l[1] * p * c72, kTiny}),
                        tau, S);
            ratio_lo.update(ptt / c72);
        }
    }

    HypothesisReport report;
    report.check = "h3";

    ConditionRecord rk;
    rk.id = "H3.1";
    rk.name = "pressure_sandwich_k";
    rk.box = box;
    w_k.commit(rk);
    rk.stats["k_declared"] = dc.k;
    if (finite_k) {
        rk.stats["k_best"] = k_best.hi;
        rk.stats["k_best_min"] = k_best.lo;
    } else {
        rk.verdict = Verdict::fail;
        rk.note = "no finite k exists on this box (2(-p_tau)^2 <= p p_tautau at tau=" +
                  fmt17(no_k_tau) + ", S=" + fmt17(no_k_S) + ")";
    }
    report.conditions.push_back(std::move(rk));

    ConditionRecord ra;
    ra.id = "H3.2";
    ra.name = "third_derivative_growth_A";
    ra.box = box;
    w_A.commit(ra);
    ra.stats["A_declared"] = dc.A;
    if (A_best.seen()) {
        ra.stats["A_best"] = A_best.hi;
        ra.stats["A_best_min"] = A_best.lo;
    }
    report.conditions.push_back(std::move(ra));

    ConditionRecord ru;
    ru.id = "H3.3";
    ru.name = "convexity_speed_upper";
    ru.box = box;
    w_up.commit(ru);
    ru.stats["l1_declared"] = dc.l[0];
    ru.stats["l1_best"] = ratio_up.hi;
    ru.stats["l1_best_min"] = ratio_up.lo;
    report.conditions.push_back(std::move(ru));

    ConditionRecord rl;
    rl.id = "H3.4";
    rl.name = "convexity_speed_lower";
    rl.box = box;
    w_lo.commit(rl);
    rl.stats["l2_declared"] = dc.l[1];
    rl.stats["l2_best"] = ratio_lo.lo;
    rl.stats["l2_best_max"] = ratio_lo.hi;
    report.conditions.push_back(std::move(rl));

    // the two speed-ratio conditions certify this box only when the ratio is
    // not constant; say so rather than implying a global constant exists
    for (auto& rec : report.conditions) {
        if (rec.id != "H3.3" && rec.id != "H3.4") continue;
        const Range& r = rec.id == "H3.3" ? ratio_up : ratio_lo;
        if (r.seen() && r.hi > r.lo * (1.0 + 1e-9))
            rec.note = "ratio varies by factor " + fmt17(r.hi / std::max(r.lo, kTiny)) +
                       " across the box; constants certified on this box only";
    }
    return report;
}

HypothesisReport check_h4(const PressureLaw& law, const EntropyProfile& profile,
                          const StateBox& box, int n) {
    const DeclaredConstants& dc = law.constants();
    const struct {
        const char* id;
        const char* name;
        const char* lo_key; // constant under the upper bound (as written)
        const char* hi_key; // constant under the lower bound (as written)
        double lo, hi;
    } sandwiches[4] = {
        {"H4.1", "entropy_coupling_p", "k1", "k2", dc.k1, dc.k2},
        {"H4.2", "entropy_coupling_p_tau", "l3", "l4", dc.l[2], dc.l[3]},
        {"H4.3", "entropy_coupling_p_second", "l5", "l6", dc.l[4], dc.l[5]},
        {"H4.4", "entropy_coupling_p_tautau", "l7", "l8", dc.l[6], dc.l[7]},
    };
    for (const auto& sw : sandwiches)
        if (!(sw.lo > 0.0 && sw.hi > 0.0))
            throw ConfigError(std::string("entropy-coupling check: declared ") +
                              sw.lo_key + ", " + sw.hi_key + " must be positive");

    const auto taus = geometric_samples(box.tau_lo, box.tau_hi, n);
    const auto xs = uniform_samples(box.x_lo, box.x_hi, n);

    Worst worst[4], worst_swapped[4];
    Range ratio[4];
    long sign_mismatch[4] = {0, 0, 0, 0};
    bool any_base = false;

    for (double x : xs) {
        const double S = profile.S(x);
        const double sigma = profile.S_prime(x);
        const double w = profile.m_prime_over_m(x);
        for (double tau : taus) {
            const double base_q[4] = {
                guarded([&] { return law.p(tau, S); }, "p", tau, x, "x"),
                guarded([&] { return law.p_tau(tau, S); }, "p_tau", tau, x, "x"),
                guarded([&] { return law.p(tau, S); }, "p", tau, x, "x"),
                guarded([&] { return law.p_tautau(tau, S); }, "p_tautau", tau, x, "x")};
            const double mid[4] = {
                guarded([&] { return law.p_S(tau, S); }, "p_S", tau, x, "x") * sigma,
                guarded([&] { return law.p_tauS(tau, S); }, "p_tauS", tau, x, "x") *
                    sigma,
                guarded([&] { return law.p_SS(tau, S); }, "p_SS", tau, x, "x") * sigma *
                    sigma,
                guarded([&] { return law.p_tautauS(tau, S); }, "p_tautauS", tau, x,
                        "x") *
                    sigma};
            for (int i = 0; i < 4; ++i) {
                const double B = w * base_q[i];
                const double D = mid[i];
                if (B == 0.0 && D == 0.0) continue; // contributes nothing either way
                any_base = true;
                const double scale =
                    std::max({std::abs(D), std::abs(B) / sandwiches[i].lo,
                              std::abs(B) / sandwiches[i].hi, kTiny});
                worst[i].update(
                    std::min(D - B / sandwiches[i].hi, B / sandwiches[i].lo - D) / scale,
                    tau, x);
                worst_swapped[i].update(
                    std::min(D - B / sandwiches[i].lo, B / sandwiches[i].hi - D) / scale,
                    tau, x);
                if (D != 0.0) {
                    const double rho = B / D;
                    if (rho > 0.0)
                        ratio[i].update(rho);
                    else
                        ++sign_mismatch[i];
                } else {
                    ++sign_mismatch[i];
                }
            }
        }
    }

    const std::string segments = segment_sign_note(profile, box.x_lo, box.x_hi);

    HypothesisReport report;
    report.check = "h4";
    for (int i = 0; i < 4; ++i) {
        const auto& sw = sandwiches[i];
        ConditionRecord rec;
        rec.id = sw.id;
        rec.name = sw.name;
        rec.box = box;
        if (!any_base) {
            rec.verdict = Verdict::vacuous_pass;
            rec.margin = 0.0;
            rec.note = "entropy derivative vanishes identically on the box";
            report.conditions.push_back(std::move(rec));
            continue;
        }
        worst[i].commit(rec);
        rec.stats[std::string(sw.lo_key) + "_declared"] = sw.lo;
        rec.stats[std::string(sw.hi_key) + "_declared"] = sw.hi;
        if (ratio[i].seen()) {
            rec.stats["ratio_min"] = ratio[i].lo;
            rec.stats["ratio_max"] = ratio[i].hi;
        }
        rec.stats["swapped_orientation_margin"] =
            worst_swapped[i].margin == std::numeric_limits<double>::infinity()
                ? 0.0
                : worst_swapped[i].margin;
        if (sign_mismatch[i] > 0)
            rec.stats["sign_mismatch_count"] = static_cast<double>(sign_mismatch[i]);
        rec.note = segments;
        report.conditions.push_back(std::move(rec));
    }
    return report;
}

DerivativeConsistency derivative_consistency(const PressureLaw& law,
                                             const StateBox& box, int n) {
    if (n < 2) throw ConfigError("derivative_consistency: need n >= 2 per axis");
    // strictly interior sample placement so the FD stencils stay in the box
    std::vector<double> taus(n), Ss(n);
    const double lt = std::log(box.tau_lo), ht = std::log(box.tau_hi);
    for (int i = 0; i < n; ++i) {
        taus[i] = std::exp(lt + (ht - lt) * (i + 0.5) / n);
        Ss[i] = box.x_lo + (box.x_hi - box.x_lo) * (i + 0.5) / n;
    }

    using Fn = double (PressureLaw::*)(double, double) const;
    struct Pair {
        const char* name;
        Fn declared;
        Fn parent;
        bool in_tau;
    };
    const Pair pairs[] = {
        {"p_tau", &PressureLaw::p_tau, &PressureLaw::p, true},
        {"p_tautau", &PressureLaw::p_tautau, &PressureLaw::p_tau, true},
        {"p_tautautau", &PressureLaw::p_tautautau, &PressureLaw::p_tautau, true},
        {"p_S", &PressureLaw::p_S, &PressureLaw::p, false},
        {"p_tauS", &PressureLaw::p_tauS, &PressureLaw::p_tau, false},
        {"p_SS", &PressureLaw::p_SS, &PressureLaw::p_S, false},
        {"p_tautauS", &PressureLaw::p_tautauS, &PressureLaw::p_tautau, false},
    };

    DerivativeConsistency out;
    for (double S : Ss) {
        for (double tau : taus) {
            for (const auto& pr : pairs) {
                const double h = pr.in_tau ? tau * 6e-6 : std::max(std::abs(S), 1.0) * 6e-6;
                const double fp = pr.in_tau ? (law.*pr.parent)(tau + h, S)
                                            : (law.*pr.parent)(tau, S + h);
                const double fm = pr.in_tau ? (law.*pr.parent)(tau - h, S)
                                            : (law.*pr.parent)(tau, S - h);
                const double fd = (fp - fm) / (2.0 * h);
                const double declared = (law.*pr.declared)(tau, S);
                const double noise_floor =
                    64.0 * std::numeric_limits<double>::epsilon() *
                    (std::abs(fp) + std::abs(fm)) / (2.0 * h);
                const double denom =
                    std::max({std::abs(declared), std::abs(fd), noise_floor, kTiny});
                const double rel = std::abs(fd - declared) / denom;
                if (rel > out.max_rel_error) {
                    out.max_rel_error = rel;
                    out.worst_partial = pr.name;
                    out.witness_tau = tau;
                    out.witness_S = S;
                }
            }
        }
    }
    return out;
}

} // namespace psys
