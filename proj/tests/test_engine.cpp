#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "wlanopt/engine.hpp"
#include "wlanopt/mac.hpp"

using namespace wlanopt;

namespace {

Scenario one_type(double lambda, double mu, int count, MacProtocol proto) {
    Scenario s;
    s.types.emplace_back(10.0, 0.3, lambda, mu, count);
    s.protocol = proto;
    return s;
}

Scenario two_type(double d1, double d2, int n1, int n2, MacProtocol proto) {
    Scenario s;
    s.types.emplace_back(10.0, 0.3, d1, 1.0, n1);
    s.types.emplace_back(5.0, 0.1, d2, 1.0, n2);
    s.protocol = proto;
    return s;
}

}  // namespace

TEST_CASE("stationary distribution: single user at lambda = mu") {
    const Scenario s = one_type(1.0, 1.0, 1, MacProtocol::tdma());
    const auto dist = stationary_distribution(Randomization{{{0, 1}}}, s);
    REQUIRE(dist.support.size() == 2);
    CHECK(dist.support[0].second == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dist.support[1].second == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("stationary distribution: two users give Binomial(2, 1/2)") {
    const Scenario s = one_type(1.0, 1.0, 2, MacProtocol::tdma());
    const auto dist = stationary_distribution(Randomization{{{0, 2}}}, s);
    REQUIRE(dist.support.size() == 3);
    std::map<int, double> by_count;
    for (const auto& [st, pr] : dist.support) by_count[st.x[0][1]] = pr;
    CHECK(by_count[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(by_count[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(by_count[2] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("stationary distribution normalizes and has binomial marginals") {
    std::mt19937_64 g(99);
    for (int rep = 0; rep < 200; ++rep) {
        const double d1 = 0.05 + (g() % 40) / 10.0;
        const double d2 = 0.05 + (g() % 40) / 10.0;
        const int n1 = 1 + static_cast<int>(g() % 5);
        const int n2 = static_cast<int>(g() % 5);
        const Scenario s = two_type(d1, d2, n1, n2, MacProtocol::tdma());
        const Randomization n{{{0, n1}, {0, n2}}};
        const auto dist = stationary_distribution(n, s);

        double total = 0.0;
        double mean1 = 0.0;
        for (const auto& [st, pr] : dist.support) {
            CHECK(pr >= 0.0);
            total += pr;
            mean1 += pr * st.x[0][1];
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
        CHECK(std::abs(mean1 - n1 * s.types[0].occupancy()) <= 1e-12 * n1);
    }
}

TEST_CASE("per-plan caps truncate and never raise capped occupancy") {
    const Scenario open = two_type(1.0, 1.0, 4, 4, MacProtocol::tdma());
    Scenario capped = open;
    capped.admission = AdmissionPolicy::per_plan_cap({0, 5});
    const Randomization n{{{0, 4}, {0, 4}}};

    const auto occupancy = [&](const Scenario& s) {
        double mean = 0.0;
        for (const auto& [st, pr] : stationary_distribution(n, s).support)
            mean += pr * (st.x[0][1] + st.x[1][1]);
        return mean;
    };
    CHECK(occupancy(capped) < occupancy(open));

    for (const auto& [st, pr] : stationary_distribution(n, capped).support)
        CHECK(st.x[0][1] + st.x[1][1] <= 5);
}

TEST_CASE("empty admissible set and oversized instances are errors") {
    Scenario s = one_type(1.0, 1.0, 2, MacProtocol::tdma());
    s.admission = AdmissionPolicy::per_plan_cap({0, -1});
    CHECK_THROWS(stationary_distribution(Randomization{{{0, 2}}}, s));

    const Scenario big = two_type(1.0, 1.0, 3999, 3999, MacProtocol::tdma());
    CHECK_THROWS_WITH_AS(stationary_distribution(Randomization{{{0, 3999}, {0, 3999}}}, big),
                         doctest::Contains("enumeration bound"), std::invalid_argument);
}

TEST_CASE("steady-state utility of a lone user") {
    const Randomization n{{{0, 1}}};
    // online half the time; alone the throughput is p (CSMA) or 1 (TDMA)
    const Scenario cs = one_type(1.0, 1.0, 1, MacProtocol::csma(2.0 / 17.0));
    CHECK(steady_state_utility(0, 1, n, cs) == doctest::Approx(3.725).epsilon(1e-12));
    const Scenario td = one_type(1.0, 1.0, 1, MacProtocol::tdma());
    CHECK(steady_state_utility(0, 1, n, td) == doctest::Approx(4.85).epsilon(1e-12));
    CHECK_THROWS(steady_state_utility(0, 1, Randomization{{{1, 0}}}, td));
}

TEST_CASE("expected guaranteed rate under TDMA") {
    const Scenario td1 = one_type(1.0, 1.0, 1, MacProtocol::tdma());
    CHECK(expected_guaranteed_rate(0, 1, Randomization{{{0, 1}}}, td1) ==
          doctest::Approx(0.5).epsilon(1e-12));

    const Scenario td2 = two_type(1.0, 1.0, 1, 1, MacProtocol::tdma());
    CHECK(expected_guaranteed_rate(0, 1, Randomization{{{0, 1}, {0, 1}}}, td2) ==
          doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("randomization distribution: degenerate and single-coin cases") {
    const Scenario s = two_type(1.0, 1.0, 3, 2, MacProtocol::tdma());
    const auto pure = ActionProfile::two_type(1.0, 1.0);
    const auto outcomes = randomization_distribution(0, 1, pure, s);
    REQUIRE(outcomes.size() == 1);
    CHECK(outcomes[0].first.n == std::vector<std::vector<int>>{{0, 3}, {0, 2}});
    CHECK(outcomes[0].second == doctest::Approx(1.0));

    const Scenario k1 = one_type(1.0, 1.0, 2, MacProtocol::tdma());
    ActionProfile half{{{0.5, 0.5}}};
    const auto coin = randomization_distribution(0, 1, half, k1);
    REQUIRE(coin.size() == 2);
    for (const auto& [n, pr] : coin) {
        CHECK(pr == doctest::Approx(0.5));
        CHECK(n.n[0][1] >= 1);
    }
}

TEST_CASE("randomization distribution sums to one") {
    const Scenario s = two_type(0.7, 1.3, 3, 2, MacProtocol::tdma());
    ActionProfile pi{{{0.2, 0.8}, {0.55, 0.45}}};
    double total = 0.0;
    for (const auto& [n, pr] : randomization_distribution(1, 1, pi, s)) total += pr;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("mixing the pinned plan recovers the unconditional multinomial") {
    const Scenario s = two_type(1.0, 0.5, 2, 2, MacProtocol::tdma());
    ActionProfile pi{{{0.3, 0.7}, {0.6, 0.4}}};

    // unconditional law by direct enumeration of both types' choices
    std::map<std::vector<std::vector<int>>, double> expect;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) {
            const double binom_a = (a == 1 ? 2.0 : 1.0) * std::pow(0.7, a) * std::pow(0.3, 2 - a);
            const double binom_b = (b == 1 ? 2.0 : 1.0) * std::pow(0.4, b) * std::pow(0.6, 2 - b);
            expect[{{2 - a, a}, {2 - b, b}}] += binom_a * binom_b;
        }

    std::map<std::vector<std::vector<int>>, double> mixed;
    for (int l = 0; l <= 1; ++l)
        for (const auto& [n, pr] : randomization_distribution(0, l, pi, s))
            mixed[n.n] += pi.pi[0][l] * pr;

    for (const auto& [n, pr] : expect) {
        REQUIRE(mixed.count(n) == 1);
        CHECK(mixed[n] == doctest::Approx(pr).epsilon(1e-13));
    }
}

TEST_CASE("randomization distribution matches sampled frequencies") {
    const Scenario s = two_type(1.0, 1.0, 3, 2, MacProtocol::tdma());
    ActionProfile pi{{{0.35, 0.65}, {0.8, 0.2}}};
    const auto law = randomization_distribution(0, 1, pi, s);

    std::map<std::vector<std::vector<int>>, int> hits;
    std::mt19937_64 g(77);
    const int draws = 200000;
    for (int rep = 0; rep < draws; ++rep) {
        Randomization n{{{0, 1}, {0, 0}}};  // the pinned user
        for (int k = 0; k < 2; ++k) {
            const int free_users = s.types[k].count - (k == 0 ? 1 : 0);
            for (int i = 0; i < free_users; ++i) {
                const double u = (g() >> 11) * 0x1.0p-53;
                ++n.n[k][u < pi.pi[k][1] ? 1 : 0];
            }
        }
        ++hits[n.n];
    }
    for (const auto& [n, pr] : law) {
        const double freq = static_cast<double>(hits[n.n]) / draws;
        const double se = std::sqrt(pr * (1.0 - pr) / draws);
        CHECK(std::abs(freq - pr) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("deviating onto an unplayed plan is well defined") {
    const Scenario cs = two_type(1.0, 1.0, 2, 2, MacProtocol::csma(2.0 / 17.0));
    const auto nobody_in = ActionProfile::two_type(0.0, 0.0);
    // the pinned-user conditional still exists when pi_{k,1} = 0
    const double use = expected_utility_of_use(0, nobody_in, cs, {{0.0, 1.0}});
    CHECK(use == doctest::Approx(3.725).epsilon(1e-12));  // deviator is alone
}

TEST_CASE("expected utility of use") {
    const Scenario cs = one_type(1.0, 1.0, 1, MacProtocol::csma(2.0 / 17.0));
    CHECK(expected_utility_of_use(0, ActionProfile{{{1.0, 0.0}}}, cs) == 0.0);
    CHECK(expected_utility_of_use(0, ActionProfile{{{0.0, 1.0}}}, cs) ==
          doctest::Approx(3.725).epsilon(1e-12));
}

TEST_CASE("expected cost") {
    const Scenario cs = two_type(1.0, 1.0, 2, 2, MacProtocol::csma(2.0 / 17.0));
    const auto policy = PricingPolicy::single(1.7, 0.0);
    const auto both_in = ActionProfile::two_type(1.0, 1.0);
    CHECK(expected_cost(0, both_in, policy, cs) == doctest::Approx(1.7).epsilon(1e-14));
    CHECK(expected_cost(0, ActionProfile::two_type(0.0, 0.0), policy, cs) == 0.0);

    const Scenario td = one_type(1.0, 1.0, 1, MacProtocol::tdma());
    CHECK(expected_cost(0, ActionProfile{{{0.0, 1.0}}}, PricingPolicy::single(0.0, 1.0), td) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("deviation payoffs are affine in the deviation row") {
    const Scenario td = two_type(0.8, 1.2, 3, 2, MacProtocol::tdma());
    ActionProfile pi{{{0.25, 0.75}, {0.5, 0.5}}};
    const auto policy = PricingPolicy::single(0.4, 0.3);

    const double u1 = expected_utility_of_use(0, pi, td, {{0.0, 1.0}});
    const double c1 = expected_cost(0, pi, policy, td, {{0.0, 1.0}});
    std::mt19937_64 g(5);
    for (int i = 0; i < 20; ++i) {
        const double dev = (g() % 1000) / 999.0;
        const std::vector<double> row = {1.0 - dev, dev};
        CHECK(std::abs(expected_utility_of_use(0, pi, td, row) - dev * u1) <= 1e-12);
        CHECK(std::abs(expected_cost(0, pi, policy, td, row) - dev * c1) <= 1e-12);
    }
}

TEST_CASE("per-user expectations reject the dummy plan") {
    Scenario s;
    s.types.emplace_back(10.0, 0.3, 1.0, 1.0, 2);
    s.protocol = MacProtocol::tdma();
    const Randomization n{{{1, 1}}};  // one user on the dummy plan
    CHECK_THROWS(steady_state_utility(0, 0, n, s));
    CHECK_THROWS(expected_guaranteed_rate(0, 0, n, s));
    CHECK_NOTHROW(steady_state_utility(0, 1, n, s));
}
