#include <doctest.h>

#include <cmath>

#include "wlanopt/engine.hpp"
#include "wlanopt/mac.hpp"

using namespace wlanopt;

namespace {

Scenario baseline(Protocol proto, double d1, double d2, int n1, int n2) {
    Scenario s;
    s.types.emplace_back(10.0, 0.3, d1, 1.0, n1);
    s.types.emplace_back(5.0, 0.1, d2, 1.0, n2);
    s.protocol = proto == Protocol::Csma ? MacProtocol::csma(2.0 / 17.0) : MacProtocol::tdma();
    return s;
}

constexpr double kP = 2.0 / 17.0;

}  // namespace

TEST_CASE("instantaneous throughput") {
    CHECK(throughput_at(1, MacProtocol::csma(kP)) == doctest::Approx(kP).epsilon(1e-15));
    CHECK(throughput_at(4, MacProtocol::tdma()) == doctest::Approx(0.25));
    CHECK(throughput_at(20, MacProtocol::csma(kP)) ==
          doctest::Approx(kP * std::pow(1.0 - kP, 19)).epsilon(1e-15));
    CHECK_THROWS(throughput_at(0, MacProtocol::tdma()));

    SystemState st{{{0, 1}, {0, 1}}};
    CHECK(throughput(st, 0, 1, MacProtocol::tdma()) == doctest::Approx(0.5));
    SystemState offline{{{0, 0}, {0, 1}}};
    CHECK_THROWS(throughput(offline, 0, 1, MacProtocol::tdma()));
}

TEST_CASE("aggregate throughput never exceeds the unit bandwidth") {
    for (int m = 1; m <= 60; ++m) {
        CHECK(m * throughput_at(m, MacProtocol::tdma()) <= 1.0 + 1e-15);
        CHECK(m * throughput_at(m, MacProtocol::csma(kP)) <= 1.0);
        CHECK(throughput_at(m, MacProtocol::csma(kP)) <= kP);
    }
}

TEST_CASE("utility of use") {
    const UserType video(10.0, 0.3, 1.0, 1.0, 1);
    const UserType email(5.0, 0.1, 1.0, 1.0, 1);
    CHECK(utility_of_use(video, 1.0) == doctest::Approx(9.7));
    CHECK(utility_of_use(video, 0.03) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(utility_of_use(email, kP) == doctest::Approx(4.15).epsilon(1e-12));
    CHECK_THROWS(utility_of_use(video, 0.0));
    CHECK_THROWS(utility_of_use(video, -0.5));
}

TEST_CASE("congestion factor") {
    const UserType even(10.0, 0.3, 1.0, 1.0, 1);
    CHECK(x_factor(0.0, even, kP) == doctest::Approx(1.0));
    CHECK(x_factor(1.0, even, kP) == doctest::Approx(16.0 / 15.0).epsilon(1e-15));
    const UserType low(10.0, 0.3, 0.1, 1.0, 1);
    CHECK(x_factor(0.5, low, kP) == doctest::Approx(1.0 + 0.5 * (1.0 / 11.0) * (2.0 / 15.0)));
}

TEST_CASE("closed forms match the single-user arithmetic") {
    const Scenario cs = baseline(Protocol::Csma, 1.0, 1.0, 1, 0);
    const auto policy = PricingPolicy::single(0.0, 0.0);
    const auto in = ActionProfile::two_type(1.0, 0.0);
    const auto [u, c] = csma_expected_utility(0, in, {}, policy, cs);
    CHECK(u == doctest::Approx(3.725).epsilon(1e-12));
    CHECK(c == 0.0);

    // out users earn and pay nothing
    const auto [u0, c0] = csma_expected_utility(0, in, 0.0, policy, cs);
    CHECK(u0 == 0.0);
    CHECK(c0 == 0.0);

    const Scenario td = baseline(Protocol::Tdma, 1.0, 1.0, 1, 0);
    const auto [ut, ct] = tdma_expected_utility(0, in, {}, policy, td);
    CHECK(ut == doctest::Approx(4.85).epsilon(1e-12));

    CHECK_THROWS(csma_expected_utility(0, in, {}, policy, td));
    CHECK_THROWS(tdma_expected_utility(0, in, {}, policy, cs));
}

TEST_CASE("tdma congestion bracket collapses without neighbors") {
    // N_k = 1 and nobody else in: the bracket is alpha - beta exactly
    const Scenario td = baseline(Protocol::Tdma, 0.3, 0.7, 1, 4);
    const double pi_in[2] = {1.0, 0.0};
    const double r = td.types[0].occupancy();
    CHECK(tdma_unit_use(0, pi_in, td) == doctest::Approx(r * (10.0 - 0.3)).epsilon(1e-14));
}

TEST_CASE("tdma expected usage") {
    const Scenario td1 = baseline(Protocol::Tdma, 1.0, 1.0, 1, 0);
    CHECK(tdma_expected_usage(0, ActionProfile::two_type(1.0, 0.0), td1) ==
          doctest::Approx(0.5).epsilon(1e-14));
    const Scenario td2 = baseline(Protocol::Tdma, 1.0, 1.0, 1, 1);
    CHECK(tdma_expected_usage(0, ActionProfile::two_type(1.0, 1.0), td2) ==
          doctest::Approx(0.375).epsilon(1e-14));

    // off-grid mixed profile against pinned-user enumeration
    const Scenario td6 = baseline(Protocol::Tdma, 1.0, 1.0, 6, 6);
    const auto mixed = ActionProfile::two_type(0.3, 0.7);
    for (int k = 0; k < 2; ++k) {
        double pinned = 0.0;
        for (const auto& [n, pr] : randomization_distribution(k, 1, mixed, td6))
            pinned += pr * expected_guaranteed_rate(k, 1, n, td6);
        CHECK(tdma_expected_usage(k, mixed, td6) == doctest::Approx(pinned).epsilon(1e-9));
    }
}

TEST_CASE("closed forms agree with enumeration on a mixed grid") {
    // the full 1..6 grid runs in the acceptance suite; this is the quick version
    const double pis[] = {0.0, 0.5, 1.0};
    for (double d1 : {0.1, 1.0})
        for (double d2 : {0.1, 1.0})
            for (int n1 : {1, 3})
                for (int n2 : {2, 4})
                    for (double p1 : pis)
                        for (double p2 : pis) {
                            const auto profile = ActionProfile::two_type(p1, p2);
                            const Scenario cs = baseline(Protocol::Csma, d1, d2, n1, n2);
                            const Scenario td = baseline(Protocol::Tdma, d1, d2, n1, n2);
                            const auto policy = PricingPolicy::single(1.1, 0.2);
                            for (int k = 0; k < 2; ++k) {
                                const auto [ucs, ccs] =
                                    csma_expected_utility(k, profile, {}, policy, cs);
                                CHECK(ucs == doctest::Approx(expected_utility_of_use(k, profile, cs))
                                                 .epsilon(1e-9));
                                CHECK(ccs == doctest::Approx(expected_cost(k, profile, policy, cs))
                                                 .epsilon(1e-9));
                                const auto [utd, ctd] =
                                    tdma_expected_utility(k, profile, {}, policy, td);
                                CHECK(utd == doctest::Approx(expected_utility_of_use(k, profile, td))
                                                 .epsilon(1e-9));
                                CHECK(ctd == doctest::Approx(expected_cost(k, profile, policy, td))
                                                 .epsilon(1e-9));
                            }
                        }
}

TEST_CASE("csma congestion is geometric, tdma congestion is linear") {
    // brackets (alpha_k - use / (DT r_k)) as the other population grows
    const double pi_in[2] = {1.0, 1.0};
    std::vector<double> csma_brackets, tdma_brackets;
    for (int n2 = 1; n2 <= 6; ++n2) {
        const Scenario cs = baseline(Protocol::Csma, 1.0, 0.1, 3, n2);
        const Scenario td = baseline(Protocol::Tdma, 1.0, 0.1, 3, n2);
        const double r = cs.types[0].occupancy();
        csma_brackets.push_back(10.0 - csma_unit_use(0, pi_in, cs) / r);
        tdma_brackets.push_back(10.0 - tdma_unit_use(0, pi_in, td) / r);
    }
    const Scenario cs1 = baseline(Protocol::Csma, 1.0, 0.1, 3, 1);
    const double ratio = x_factor(1.0, cs1.types[1], kP);
    for (std::size_t i = 1; i < csma_brackets.size(); ++i) {
        CHECK(csma_brackets[i] / csma_brackets[i - 1] == doctest::Approx(ratio).epsilon(1e-12));
        CHECK(tdma_brackets[i] - tdma_brackets[i - 1] ==
              doctest::Approx(tdma_brackets[1] - tdma_brackets[0]).epsilon(1e-12));
    }
}

TEST_CASE("use is non-increasing in rival presence") {
    for (Protocol proto : {Protocol::Csma, Protocol::Tdma}) {
        double prev = 1e18;
        for (double rival_pi : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const Scenario s = baseline(proto, 1.0, 1.0, 4, 4);
            const double pi_in[2] = {0.6, rival_pi};
            const double u = unit_use(0, pi_in, s);
            CHECK(u <= prev + 1e-14);
            prev = u;
        }
        prev = 1e18;
        for (int n2 : {0, 2, 4, 8}) {
            const Scenario s = baseline(proto, 1.0, 1.0, 4, n2);
            const double pi_in[2] = {0.6, 0.8};
            const double u = unit_use(0, pi_in, s);
            CHECK(u <= prev + 1e-14);
            prev = u;
        }
    }
}
