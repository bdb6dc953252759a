#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <memory>

#include "psys/entropy_profile.hpp"
#include "psys/hypotheses.hpp"
#include "psys/pressure_law.hpp"
#include "support.hpp"

using namespace psys;
using testsupport::rel_err;

namespace {

std::unique_ptr<PressureLaw> gamma_law(double gamma, double K = 1.0,
                                       double c_v = 1.0) {
    return make_pressure_law("gamma-law",
                             {{"K", K}, {"gamma", gamma}, {"c_v", c_v}});
}

} // namespace

TEST_CASE("gamma-law pressure and partials match the closed forms") {
    for (double gamma : {1.4, 2.0, 3.0}) {
        auto law = gamma_law(gamma);
        for (double tau : {0.1, 0.37, 1.0, 4.2, 10.0}) {
            for (double S : {-0.3, 0.0, 0.5}) {
                const double p = std::exp(S) * std::pow(tau, -gamma);
                CHECK(rel_err(law->p(tau, S), p) < 1e-14);
                CHECK(rel_err(law->p_tau(tau, S), -gamma * p / tau) < 1e-14);
                CHECK(rel_err(law->p_tautau(tau, S),
                              gamma * (gamma + 1) * p / (tau * tau)) < 1e-14);
                CHECK(rel_err(law->p_S(tau, S), p) < 1e-14);
            }
        }
    }
}

TEST_CASE("declared partials are finite-difference consistent") {
    const StateBox box{0.1, 10.0, -0.5, 0.5};
    for (double gamma : {1.4, 2.0}) {
        auto law = gamma_law(gamma);
        const auto dc = derivative_consistency(*law, box, 8);
        CAPTURE(gamma);
        CAPTURE(dc.worst_partial);
        CHECK(dc.max_rel_error < 1e-6);
    }
    SUBCASE("constant-pressure stub has exactly consistent zero partials") {
        testsupport::ConstantLaw stub;
        const auto dc = derivative_consistency(stub, box, 4);
        CHECK(dc.max_rel_error == 0.0);
    }
    SUBCASE("stiffened gas stays consistent despite the pressure shift") {
        auto law = make_pressure_law(
            "stiffened", {{"K", 2.0}, {"gamma", 1.8}, {"p_inf", 0.05}, {"c_v", 1.0}});
        const auto dc = derivative_consistency(*law, {0.2, 2.0, -0.2, 0.2}, 6);
        CHECK(dc.max_rel_error < 1e-6);
    }
}

TEST_CASE("structural sign conditions over state boxes") {
    SUBCASE("gamma=2 passes on a narrow box") {
        auto law = gamma_law(2.0);
        const auto rep = check_h1(*law, {0.5, 2.0, -0.1, 0.1}, 16);
        CHECK(rep.passed());
        CHECK(rep.find("H1.2")->verdict == Verdict::pass);
        CHECK(rep.find("H1.4")->verdict == Verdict::indicative_pass);
    }
    SUBCASE("gamma=1.4 passes on the wide reference box") {
        auto law = gamma_law(1.4);
        CHECK(check_h1(*law, {0.1, 10.0, -0.1, 0.1}, 16).passed());
    }
    SUBCASE("increasing pressure fails with the first sample as witness") {
        testsupport::IncreasingLaw bad;
        const auto rep = check_h1(bad, {1.0, 2.0, 0.0, 0.0}, 8);
        CHECK_FALSE(rep.passed());
        const auto* rec = rep.find("H1.2");
        REQUIRE(rec != nullptr);
        CHECK(rec->verdict == Verdict::fail);
        CHECK(rec->witness_tau == doctest::Approx(1.0));
    }
}

TEST_CASE("wavespeed integral classification") {
    SUBCASE("gamma-law: vacuum-side divergent, far-side integrable") {
        for (double gamma : {2.0, 3.0}) {
            auto law = gamma_law(gamma);
            const auto rep = check_h2(*law, 0.0);
            CAPTURE(gamma);
            CHECK(rep.passed());
            CHECK(rep.find("H2.1")->verdict == Verdict::pass);
            CHECK(rep.find("H2.2")->verdict == Verdict::pass);
            // fitted growth exponent of the vacuum-side partial sums:
            // integral from eps to 1 of xi^{-(gamma+1)/2} ~ eps^{-(gamma-1)/2}
            const double alpha = rep.find("H2.1")->stats.at("growth_exponent");
            CHECK(std::abs(alpha - 0.5 * (gamma - 1.0)) < 0.05);
        }
    }
    SUBCASE("sqrt(-p_tau) = tau^{-1/2} fails both classifications") {
        testsupport::LogLaw law;
        const auto rep = check_h2(law, 0.0);
        CHECK_FALSE(rep.passed());
        CHECK(rep.find("H2.1")->verdict == Verdict::fail); // converges near 0
        CHECK(rep.find("H2.2")->verdict == Verdict::fail); // diverges at infinity
    }
}

TEST_CASE("nonlinearity ratio check reports exact gamma-law constants") {
    SUBCASE("k_best = 2 gamma/(gamma-1), uniform over the box") {
        for (double gamma : {1.4, 2.0, 3.0}) {
            auto law = gamma_law(gamma);
            const auto rep = check_h3(*law, {0.5, 2.0, -0.2, 0.2}, 24);
            CAPTURE(gamma);
            CHECK(rep.passed());
            const auto& stats = rep.find("H3.1")->stats;
            const double k_exact = 2.0 * gamma / (gamma - 1.0);
            CHECK(rel_err(stats.at("k_best"), k_exact) < 1e-10);
            // the ratio is tau-independent: sampled max and min coincide
            CHECK(rel_err(stats.at("k_best"), stats.at("k_best_min")) < 1e-10);
        }
    }
    SUBCASE("declared k = 2 with gamma = 2 fails with a witness") {
        auto law = gamma_law(2.0);
        auto constants = law->constants();
        constants.k = 2.0; // needs k >= 4
        law->set_constants(constants);
        const auto rep = check_h3(*law, {0.5, 2.0, -0.2, 0.2}, 16);
        const auto* rec = rep.find("H3.1");
        REQUIRE(rec != nullptr);
        CHECK(rec->verdict == Verdict::fail);
        CHECK(rec->margin < 0.0);
        CHECK(rec->witness_tau >= 0.5);
        CHECK(rec->witness_tau <= 2.0);
    }
    SUBCASE("third-derivative constant: best value is (3-gamma)/(gamma+1)") {
        auto law = gamma_law(2.0);
        const auto rep = check_h3(*law, {0.5, 2.0, -0.2, 0.2}, 16);
        CHECK(rel_err(rep.find("H3.2")->stats.at("A_best"), 1.0 / 3.0) < 1e-10);
    }
}

TEST_CASE("entropy-coupling sandwiches") {
    auto law = gamma_law(2.0);
    SUBCASE("constant entropy: all four conditions vacuous") {
        ConstantEntropy profile(0.3, 1.0);
        const auto rep = check_h4(*law, profile, {0.5, 2.0, -3.0, 3.0}, 16);
        CHECK(rep.passed());
        for (const auto& rec : rep.conditions)
            CHECK(rec.verdict == Verdict::vacuous_pass);
    }
    SUBCASE("tanh profile: k1 = k2 = 1/2 certify the p_mu sandwich with equality") {
        TanhEntropy profile(0.1, 0.0, 1.0, 1.0);
        const auto rep = check_h4(*law, profile, {0.5, 2.0, -3.0, 3.0}, 24);
        CHECK(rep.passed());
        const auto* rec = rep.find("H4.1");
        REQUIRE(rec != nullptr);
        CHECK(rec->verdict == Verdict::pass);
        CHECK(std::abs(rec->margin) < 1e-12); // equality for the gamma law
        // the sandwiched ratio (m'/m) p / p_mu equals 1/2 on both sides
        CHECK(rel_err(rec->stats.at("ratio_min"), 0.5) < 1e-12);
        CHECK(rel_err(rec->stats.at("ratio_max"), 0.5) < 1e-12);
    }
    SUBCASE("sign-changing entropy slope: as-written orientation is reported") {
        // On decreasing-m segments the quadratic coupling p_mumu >= 0 cannot
        // sit inside a negative window, so the as-written check fails there
        // and the swapped-orientation margin plus mismatch count are surfaced.
        auto profile = make_entropy_profile(
            "sine-bump", {{"amplitude", 0.1}, {"period", 4.0}, {"window", 8.0}},
            "", 1.0);
        const auto rep = check_h4(*law, *profile, {0.5, 2.0, -4.0, 4.0}, 24);
        const auto* rec = rep.find("H4.3");
        REQUIRE(rec != nullptr);
        CHECK(rec->verdict == Verdict::fail);
        CHECK(rec->stats.count("swapped_orientation_margin") == 1);
        CHECK(rec->stats.at("sign_mismatch_count") > 0.0);
        // the linear couplings stay exact equalities regardless of the sign
        CHECK(rep.find("H4.1")->verdict == Verdict::pass);
        CHECK(rep.find("H4.2")->verdict == Verdict::pass);
    }
}

TEST_CASE("4x denser resampling never flips the reference verdicts") {
    auto law = gamma_law(2.0);
    TanhEntropy profile(0.1, 0.0, 1.0, 1.0);
    const StateBox box{0.5, 2.0, -3.0, 3.0};
    const auto collect = [&](int n) {
        std::vector<std::pair<std::string, bool>> verdicts;
        for (const auto& rep :
             {check_h1(*law, box, n), check_h3(*law, box, n),
              check_h4(*law, profile, box, n)})
            for (const auto& rec : rep.conditions)
                verdicts.emplace_back(rec.id, verdict_ok(rec.verdict));
        return verdicts;
    };
    CHECK(collect(12) == collect(48));
}

TEST_CASE("entropy profiles: variation, weight range and segments") {
    SUBCASE("tanh: total variation matches the closed form") {
        const double amplitude = 0.4, c_v = 1.25, width = 0.7;
        TanhEntropy profile(amplitude, 0.0, width, c_v);
        // log m = S / (2 c_v) increases monotonically: the variation is the
        // endpoint increment of S over 2 c_v
        const double expected =
            (profile.S(6.0) - profile.S(-6.0)) / (2.0 * c_v);
        CHECK(rel_err(profile.total_variation(-6.0, 6.0), expected) < 1e-8);
        CHECK(rel_err(profile.total_variation(-6.0, 6.0),
                      profile.variation_from_log_increments(-6.0, 6.0)) < 1e-8);
        const auto segs = profile.monotone_segments(-6.0, 6.0);
        REQUIRE(segs.size() == 1);
        CHECK(segs[0].sign == +1);
        const auto [m_lo, m_hi] = profile.weight_range(-6.0, 6.0);
        CHECK(rel_err(m_lo, std::exp(profile.S(-6.0) / (2 * c_v))) < 1e-10);
        CHECK(rel_err(m_hi, std::exp(profile.S(6.0) / (2 * c_v))) < 1e-10);
    }
    SUBCASE("sine-bump: segment signs are constant and variation cross-checks") {
        auto profile = make_entropy_profile(
            "sine-bump", {{"amplitude", 0.2}, {"period", 4.0}, {"window", 12.0}},
            "", 1.0);
        const auto segs = profile->monotone_segments(-6.0, 6.0);
        CHECK(segs.size() >= 4); // several oscillations inside the window
        for (const auto& seg : segs) {
            const double w = seg.x_hi - seg.x_lo;
            for (int i = 1; i < 16; ++i) {
                const double sp = profile->S_prime(seg.x_lo + w * i / 16.0);
                if (seg.sign > 0) CHECK(sp >= -1e-12);
                if (seg.sign < 0) CHECK(sp <= 1e-12);
            }
        }
        CHECK(rel_err(profile->total_variation(-6.0, 6.0),
                      profile->variation_from_log_increments(-6.0, 6.0)) < 1e-8);
    }
    SUBCASE("piecewise-linear-smoothed follows its linear pieces") {
        auto profile = make_entropy_profile(
            "piecewise-linear-smoothed", {{"smoothing", 0.1}},
            "-2:0,0:0.5,2:0.1", 1.0);
        // away from the rounded corners the profile is exactly the polyline
        CHECK(std::abs(profile->S(-2.5)) < 1e-15);      // constant tail
        CHECK(rel_err(profile->S(-1.0), 0.25) < 1e-12); // rising piece
        CHECK(rel_err(profile->S(1.0), 0.3) < 1e-12);   // falling piece
        // each corner fillet is C^1: it meets the polyline at knot +- smoothing
        CHECK(rel_err(profile->S(-1.9), 0.025) < 1e-12);
        CHECK(rel_err(profile->S(0.1), 0.48) < 1e-12);
        CHECK(profile->S_prime(-1.0) == doctest::Approx(0.25));
        const auto segs = profile->monotone_segments(-3.0, 3.0);
        CHECK(segs.size() >= 2); // rise then fall (flat tails may add more)
        CHECK(rel_err(profile->total_variation(-3.0, 3.0),
                      profile->variation_from_log_increments(-3.0, 3.0)) < 1e-8);
    }
    SUBCASE("variation is stable under quadrature refinement") {
        // total_variation integrates segment by segment; comparing two
        // disjoint decompositions of the same interval exercises different
        // quadrature meshes over identical content.
        TanhEntropy profile(0.3, 0.4, 0.9, 1.0);
        const double whole = profile.total_variation(-5.0, 5.0);
        const double split = profile.total_variation(-5.0, 0.13) +
                             profile.total_variation(0.13, 5.0);
        CHECK(rel_err(whole, split) < 1e-8);
    }
}
