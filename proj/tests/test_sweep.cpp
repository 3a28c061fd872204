#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wlanopt/design.hpp"
#include "wlanopt/mac.hpp"
#include "wlanopt/sweep.hpp"

using namespace wlanopt;

TEST_CASE("range parsing") {
    auto r = IntRange::parse("1:50");
    CHECK(r.lo == 1);
    CHECK(r.hi == 50);
    CHECK(r.step == 1);
    r = IntRange::parse("5:45:10");
    CHECK(r.values() == std::vector<int>{5, 15, 25, 35, 45});
    CHECK(IntRange::parse("7").values() == std::vector<int>{7});
    CHECK_THROWS(IntRange::parse("9:1").values());
}

TEST_CASE("utility curve reproduces the instantaneous-utility figure") {
    SweepSpec spec;
    const auto rows = utility_curve(spec);
    REQUIRE(rows.size() == 20);
    CHECK(rows.front().m == 20);
    CHECK(rows.back().m == 1);

    const auto& lone = rows.back();
    CHECK(lone.tau == doctest::Approx(2.0 / 17.0).epsilon(1e-15));
    CHECK(lone.u_video == doctest::Approx(7.45).epsilon(1e-12));
    CHECK(lone.u_email == doctest::Approx(4.15).epsilon(1e-12));

    // u_video < u_email exactly below the crossing throughput 0.04
    for (const auto& r : rows) {
        if (r.tau < 0.04 - 1e-12) CHECK(r.u_video < r.u_email);
        if (r.tau > 0.04 + 1e-12) CHECK(r.u_video > r.u_email);
    }
    // throughput grows as users leave
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].tau > rows[i - 1].tau);
        CHECK(rows[i].u_video > rows[i - 1].u_video);
    }
}

TEST_CASE("csv output is byte-stable and numerically consistent") {
    SweepSpec spec;
    spec.provider = "benevolent";
    spec.protocol = "both";
    spec.n1 = {2, 4, 2};
    spec.n2 = {1, 3, 2};
    spec.demand1 = 0.1;
    spec.demand2 = 1.0;

    const auto rows1 = phase_diagram(spec);
    const auto rows2 = phase_diagram(spec);
    CHECK(phase_csv(rows1) == phase_csv(rows2));
    CHECK(phase_csv(rows1).find("\r") == std::string::npos);

    // identical output no matter how the grid is dispatched
    SweepSpec serial = spec;
    serial.jobs = 1;
    SweepSpec wide = spec;
    wide.jobs = 8;
    CHECK(phase_csv(phase_diagram(serial)) == phase_csv(rows1));
    CHECK(phase_csv(phase_diagram(wide)) == phase_csv(rows1));

    // every emitted row's objectives recompute from its policy and profile
    for (const auto& r : rows1) {
        REQUIRE(r.status == "ok");
        const Scenario s = sweep_scenario(
            spec, r.protocol == "csma" ? Protocol::Csma : Protocol::Tdma, r.n1, r.n2);
        const auto obj = evaluate_objectives(
            ActionProfile::two_type(r.pi1, r.pi2),
            PricingPolicy::single(r.p_s, r.q), s);
        CHECK(r.welfare == doctest::Approx(obj.welfare).epsilon(1e-9));
        CHECK(r.revenue == doctest::Approx(obj.revenue).epsilon(1e-9));
    }
}

TEST_CASE("12 significant digit formatting") {
    CHECK(fmt_sig12(1.0) == "1");
    CHECK(fmt_sig12(2.0 / 17.0) == "0.117647058824");
    CHECK(fmt_sig12(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("welfare curve with no email users reduces to the one-in closed form") {
    SweepSpec spec;
    spec.n1 = {10, 10, 1};
    spec.n2 = {0, 0, 1};
    spec.c0_csma = 1.0;
    spec.c0_tdma = 2.0;
    const auto rows = welfare_curve(spec);
    REQUIRE(rows.size() == 1);

    const Scenario s = sweep_scenario(spec, Protocol::Csma, 10, 0);
    const double pi_in[2] = {1.0, 0.0};
    const double expect = 10.0 * csma_unit_use(0, pi_in, s) - spec.c0_csma;
    CHECK(rows[0].csma == doctest::Approx(expect).epsilon(1e-9));
    CHECK(rows[0].tdma > rows[0].csma);
}

TEST_CASE("profit curve reports shutdown when the cost is out of reach") {
    SweepSpec spec;
    spec.n1 = {2, 2, 1};
    spec.n2 = {1, 1, 1};
    spec.c0_csma = 1e7;
    spec.c0_tdma = 1e7;
    const auto rows = profit_curve(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].csma == 0.0);
    CHECK(rows[0].tdma == 0.0);
}
