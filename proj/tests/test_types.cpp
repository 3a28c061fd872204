#include <doctest.h>

#include "wlanopt/types.hpp"

using namespace wlanopt;

TEST_CASE("pricing state sums online users per plan") {
    SystemState zero{{{0, 0}, {0, 0}}};
    CHECK(pricing_state(zero) == std::vector<int>{0, 0});

    SystemState st{{{0, 2}, {0, 3}}};
    CHECK(pricing_state(st) == std::vector<int>{0, 5});

    SystemState diag{{{1, 0}, {0, 1}}};
    CHECK(pricing_state(diag) == std::vector<int>{1, 1});
}

TEST_CASE("constructors reject invalid parameters") {
    CHECK_THROWS_AS(UserType(0.0, 0.1, 1.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(UserType(1.0, -0.1, 1.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(UserType(1.0, 0.1, 0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(UserType(1.0, 0.1, 1.0, 1.0, -2), std::invalid_argument);
    CHECK_THROWS_AS(MacProtocol::csma(1.2), std::invalid_argument);
    CHECK_THROWS_AS(MacProtocol::csma(0.0), std::invalid_argument);
    CHECK_THROWS_AS(PricingPlan(-1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ActionProfile::from_rows({{0.5, 0.4}}), std::invalid_argument);
    CHECK_THROWS_AS(ActionProfile::from_rows({{1.2, -0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(PricingPolicy({PricingPlan(1.0, 0.0)}), std::invalid_argument);
    CHECK_NOTHROW(PricingPolicy::single(std::numeric_limits<double>::infinity(), 0.0));
}

namespace {

Scenario paper_baseline() {
    Scenario s;
    s.types.emplace_back(10.0, 0.3, 0.1, 1.0, 20);
    s.types.emplace_back(5.0, 0.1, 0.1, 1.0, 20);
    s.delta_t = 1.0;
    s.c0 = 0.0;
    s.protocol = MacProtocol::csma(2.0 / 17.0);
    return s;
}

}  // namespace

TEST_CASE("validate_scenario") {
    CHECK(validate_scenario(paper_baseline()).empty());

    Scenario bad = paper_baseline();
    bad.protocol.p = 1.2;  // poke past the factory check
    auto errs = validate_scenario(bad);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0] == "CSMA p out of range");

    bad = paper_baseline();
    bad.delta_t = 0.0;
    bad.c0 = -1.0;
    CHECK(validate_scenario(bad).size() == 2);
}

TEST_CASE("validate_profile catches non-stochastic rows") {
    const Scenario s = paper_baseline();
    ActionProfile p{{{0.5, 0.4}, {0.5, 0.5}}};
    auto errs = validate_profile(p, s);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].find("not row-stochastic") != std::string::npos);
}

TEST_CASE("occupancy is increasing in lambda, decreasing in mu") {
    double prev = 0.0;
    for (double lam : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const UserType t(1.0, 0.1, lam, 1.0, 1);
        CHECK(t.occupancy() > prev);
        CHECK(t.occupancy() > 0.0);
        CHECK(t.occupancy() < 1.0);
        prev = t.occupancy();
    }
    prev = 1.0;
    for (double mu : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const UserType t(1.0, 0.1, 1.0, mu, 1);
        CHECK(t.occupancy() < prev);
        prev = t.occupancy();
    }
}

TEST_CASE("NEType labels round-trip") {
    for (const char* label : {"ii", "io", "oi", "mi", "im", "mm", "mo", "om", "oo"}) {
        CHECK(NEType::parse(label).label() == label);
    }
    CHECK(NEType::parse("(i,m)").pretty() == "(i,m)");
    CHECK_THROWS(NEType::parse("xz"));
}

TEST_CASE("classify_profile") {
    CHECK(classify_profile(ActionProfile::two_type(1.0, 0.0)).label() == "io");
    CHECK(classify_profile(ActionProfile::two_type(0.3, 1.0)).label() == "mi");
}
