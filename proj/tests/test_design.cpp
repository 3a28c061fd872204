#include <doctest.h>

#include <cmath>
#include <random>

#include "wlanopt/design.hpp"
#include "wlanopt/game.hpp"
#include "wlanopt/mac.hpp"
#include "wlanopt/verify.hpp"

using namespace wlanopt;

namespace {

Scenario baseline(Protocol proto, double d1, double d2, int n1, int n2, double c0 = 0.0) {
    Scenario s;
    s.types.emplace_back(10.0, 0.3, d1, 1.0, n1);
    s.types.emplace_back(5.0, 0.1, d2, 1.0, n2);
    s.c0 = c0;
    s.protocol = proto == Protocol::Csma ? MacProtocol::csma(2.0 / 17.0) : MacProtocol::tdma();
    return s;
}

}  // namespace

TEST_CASE("evaluate_objectives") {
    const Scenario s = baseline(Protocol::Csma, 1.0, 1.0, 3, 3);
    const auto all_out = ActionProfile::two_type(0.0, 0.0);
    auto o = evaluate_objectives(all_out, PricingPolicy::shut_out(), s);
    CHECK(o.welfare == 0.0);
    CHECK(o.revenue == 0.0);
    CHECK(o.ir_ok);

    const auto both_in = ActionProfile::two_type(1.0, 1.0);
    o = evaluate_objectives(both_in, PricingPolicy::single(0.0, 0.0), s);
    CHECK(o.revenue == 0.0);
    CHECK(o.ir_ok);  // c0 = 0
    Scenario costly = s;
    costly.c0 = 1.0;
    CHECK(!evaluate_objectives(both_in, PricingPolicy::single(0.0, 0.0), costly).ir_ok);
}

TEST_CASE("welfare plus revenue is the total utility of use") {
    std::mt19937_64 g(31);
    const auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * ((g() >> 11) * 0x1.0p-53);
    };
    for (int i = 0; i < 50; ++i) {
        const Scenario s = baseline(i % 2 ? Protocol::Csma : Protocol::Tdma, uni(0.1, 1.5),
                                    uni(0.1, 1.5), 1 + i % 4, 1 + i % 3);
        const auto profile = ActionProfile::two_type(uni(0, 1), uni(0, 1));
        const auto policy = PricingPolicy::single(uni(0, 2), s.protocol.is_tdma() ? uni(0, 1) : 0.0);
        const auto o = evaluate_objectives(profile, policy, s);
        double total_use = 0.0;
        const double pi_in[2] = {profile.in_prob(0), profile.in_prob(1)};
        for (int k = 0; k < 2; ++k)
            total_use += s.types[k].count * pi_in[k] * unit_use(k, pi_in, s);
        CHECK(o.welfare + o.revenue == doctest::Approx(total_use).epsilon(1e-9));
    }
}

TEST_CASE("scalar_maximize") {
    auto r = scalar_maximize([](double x) { return -(x - 0.3) * (x - 0.3); });
    CHECK(std::abs(r.arg - 0.3) <= 1e-8);

    r = scalar_maximize([](double) { return 7.0; });
    CHECK(r.arg == 0.0);  // leftmost tie-break
    CHECK(r.value == 7.0);

    // matches a dense grid on a lumpy function
    const auto f = [](double x) { return std::sin(17 * x) + 0.5 * std::cos(3 * x); };
    double dense = -1e18;
    for (int i = 0; i <= 1000000; ++i) dense = std::max(dense, f(i / 1000000.0));
    CHECK(scalar_maximize(f).value == doctest::Approx(dense).epsilon(1e-6));
}

TEST_CASE("benevolent CSMA: low demand keeps everyone in for free") {
    const auto out = solve_benevolent_csma(baseline(Protocol::Csma, 0.1, 0.1, 20, 20));
    CHECK(out.best.ne_type.label() == "ii");
    CHECK(out.best.policy.plans[1].subscription == 0.0);
    CHECK(out.best.welfare > 0.0);
    CHECK(out.candidates.size() == 6);
    for (const auto& c : out.candidates) {
        if (!c.feasible) continue;
        CHECK(is_nash(c.profile, c.policy, baseline(Protocol::Csma, 0.1, 0.1, 20, 20), 1e-6));
        const auto o =
            evaluate_objectives(c.profile, c.policy, baseline(Protocol::Csma, 0.1, 0.1, 20, 20));
        CHECK(c.welfare == doctest::Approx(o.welfare).epsilon(1e-9));
        CHECK(c.revenue == doctest::Approx(o.revenue).epsilon(1e-9));
    }
}

TEST_CASE("benevolent CSMA shuts down when the cost is unpayable") {
    const auto out = solve_benevolent_csma(baseline(Protocol::Csma, 1.0, 1.0, 3, 3, 1e6));
    CHECK(out.best.ne_type.label() == "oo");
    CHECK(out.best.welfare == 0.0);
    CHECK(std::isinf(out.best.policy.plans[1].subscription));
}

TEST_CASE("the mixed-and-in welfare step matches a dense grid") {
    // reconstruct the constrained scalar program behind the (m,i) candidate
    // and compare its refined optimum against a million-point scan
    const Scenario s = baseline(Protocol::Csma, 1.0, 0.1, 20, 5);
    const auto objective = [&](double pi) -> double {
        const double pi_in[2] = {1.0, pi};
        const double p_s = csma_unit_use(1, pi_in, s);  // email users indifferent
        if (p_s < 0.0) return -1e300;
        const double in_use = csma_unit_use(0, pi_in, s);
        if (in_use < p_s) return -1e300;  // video users must stay
        return (in_use - p_s) * 20.0;
    };
    double dense = -1e300;
    for (int i = 0; i <= 1000000; ++i) dense = std::max(dense, objective(i / 1e6));

    const auto out = solve_benevolent_csma(s);
    for (const auto& c : out.candidates)
        if (c.type.label() == "im") {
            REQUIRE(c.feasible);
            CHECK(c.welfare == doctest::Approx(dense).epsilon(1e-6));
        }
}

TEST_CASE("benevolent CSMA can charge a positive fee at zero cost") {
    const auto out = solve_benevolent_csma(baseline(Protocol::Csma, 1.0, 0.1, 20, 5));
    CHECK(out.best.policy.plans[1].subscription > 0.0);
    CHECK(out.best.ne_type.t[0] == Stance::In);
}

TEST_CASE("selfish CSMA prefers video-only unless email users dominate") {
    const auto video_heavy = solve_selfish_csma(baseline(Protocol::Csma, 0.1, 0.1, 30, 10));
    CHECK(video_heavy.best.ne_type.label() == "io");
    const auto email_heavy = solve_selfish_csma(baseline(Protocol::Csma, 0.1, 0.1, 5, 45));
    CHECK(email_heavy.best.ne_type.label() == "ii");
}

TEST_CASE("solvers match brute force on tiny instances") {
    for (Protocol proto : {Protocol::Csma, Protocol::Tdma})
        for (Objective obj : {Objective::Welfare, Objective::Revenue}) {
            const Scenario s = baseline(proto, 1.0, 0.1, 2, 2, 0.5);
            const auto out = solve_design(obj, s);
            const double got = obj == Objective::Welfare ? out.best.welfare : out.best.revenue;
            const double want = verify::brute_force_objective(obj, s);
            CHECK(verify::close_rel(got, want, 1e-3, 1e-6));
        }
}

TEST_CASE("benevolent TDMA: symmetric types split the cost evenly with q = 0") {
    Scenario s = baseline(Protocol::Tdma, 1.0, 1.0, 4, 4, 2.0);
    s.types[1] = s.types[0];  // identical populations
    const auto out = solve_benevolent_tdma(s);
    CHECK(out.best.ne_type.label() == "ii");
    CHECK(out.best.policy.plans[1].rate_charge == 0.0);
    CHECK(out.best.policy.plans[1].subscription == doctest::Approx(2.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("benevolent TDMA: zero cost means free service") {
    const auto out = solve_benevolent_tdma(baseline(Protocol::Tdma, 1.0, 1.0, 4, 4, 0.0));
    CHECK(out.best.ne_type.label() == "ii");
    CHECK(out.best.policy.plans[1].subscription == 0.0);
    CHECK(out.best.policy.plans[1].rate_charge == 0.0);
    double total = 0.0;
    const double pi_in[2] = {1.0, 1.0};
    const Scenario s = baseline(Protocol::Tdma, 1.0, 1.0, 4, 4, 0.0);
    for (int k = 0; k < 2; ++k) total += s.types[k].count * tdma_unit_use(k, pi_in, s);
    CHECK(out.best.welfare == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("selfish TDMA: symmetric types pay their full utility via p_s") {
    Scenario s = baseline(Protocol::Tdma, 1.0, 1.0, 4, 4);
    s.types[1] = s.types[0];
    const auto out = solve_selfish_tdma(s);
    const double pi_in[2] = {1.0, 1.0};
    const double u = tdma_unit_use(0, pi_in, s);
    CHECK(out.best.revenue == doctest::Approx(u * 8.0).epsilon(1e-9));
    CHECK(out.best.policy.plans[1].rate_charge == 0.0);
    CHECK(out.best.policy.plans[1].subscription == doctest::Approx(u).epsilon(1e-9));
}

TEST_CASE("selfish TDMA with a single type present extracts the whole surplus") {
    const Scenario s = baseline(Protocol::Tdma, 1.0, 1.0, 5, 0);
    const auto out = solve_selfish_tdma(s);
    const double pi_in[2] = {1.0, 0.0};
    const double u = tdma_unit_use(0, pi_in, s);
    CHECK(out.best.revenue == doctest::Approx(u * 5.0).epsilon(1e-9));
    CHECK(out.best.policy.plans[1].subscription == doctest::Approx(u).epsilon(1e-9));
}

TEST_CASE("benevolent candidates never include the zero-welfare mixed patterns") {
    const auto out = solve_benevolent_tdma(baseline(Protocol::Tdma, 1.0, 0.1, 3, 3, 0.4));
    for (const auto& c : out.candidates) {
        CHECK(c.type.label() != "mm");
        CHECK(c.type.label() != "mo");
        CHECK(c.type.label() != "om");
    }
    CHECK(out.candidates.size() == 6);
    const auto selfish = solve_selfish_tdma(baseline(Protocol::Tdma, 1.0, 0.1, 3, 3, 0.4));
    CHECK(selfish.candidates.size() == 9);
}

TEST_CASE("providers dominate each other on their own objectives") {
    std::mt19937_64 g(17);
    const auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * ((g() >> 11) * 0x1.0p-53);
    };
    for (int i = 0; i < 30; ++i) {
        Scenario s;
        s.types.emplace_back(uni(6, 12), uni(0.1, 0.4), uni(0.1, 1.5), 1.0, 1 + i % 4);
        s.types.emplace_back(uni(3, 7), uni(0.05, 0.2), uni(0.1, 1.5), 1.0, 1 + (i / 2) % 4);
        s.c0 = uni(0.0, 1.0);
        s.protocol = i % 2 ? MacProtocol::tdma() : MacProtocol::csma(2.0 / 17.0);
        const auto ben = solve_design(Objective::Welfare, s);
        const auto sel = solve_design(Objective::Revenue, s);
        CHECK(ben.best.welfare >= sel.best.welfare - 1e-6);
        CHECK(sel.best.revenue >= ben.best.revenue - 1e-6);
    }
}

TEST_CASE("skipping the both-mixed step never helps the selfish provider") {
    SearchOptions skip;
    skip.skip_both_mixed = true;
    for (int n1 : {5, 15, 25})
        for (int n2 : {5, 15, 25})
            for (double d1 : {0.1, 1.0})
                for (double d2 : {0.1, 1.0}) {
                    const Scenario s = baseline(Protocol::Csma, d1, d2, n1, n2);
                    const auto with_mm = solve_selfish_csma(s);
                    const auto without = solve_selfish_csma(s, skip);
                    CHECK(without.best.revenue <= with_mm.best.revenue + 1e-9);
                    // over the four baseline demand grids the step never binds
                    CHECK(with_mm.best.revenue ==
                          doctest::Approx(without.best.revenue).epsilon(1e-9));
                }
}
