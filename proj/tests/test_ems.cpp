#include <cmath>

#include "doctest.h"
#include "mamdani_oracle.hpp"
#include "nanogrid/ems.hpp"
#include "nanogrid/error.hpp"

using namespace nanogrid;

namespace {

const NanogridParams kParams{};
const FlcController& flc() {
    static const FlcController c{kParams};
    return c;
}

}  // namespace

TEST_CASE("parameter defaults and derived bounds") {
    CHECK(kParams.shift_plus_max() == doctest::Approx(0.167250).epsilon(1e-15));
    CHECK(kParams.shift_minus_max() == doctest::Approx(0.075).epsilon(1e-15));
    CHECK(kParams.battery_energy_wh() == 12000.0);
    CHECK_NOTHROW(kParams.validate());

    NanogridParams bad = kParams;
    bad.soc_min_plus10_pct = 35.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = kParams;
    bad.m_pv = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("battery state splits signed power") {
    CHECK(BatteryState{50, 300}.charge_w() == 300);
    CHECK(BatteryState{50, 300}.discharge_w() == 0);
    CHECK(BatteryState{50, -120}.charge_w() == 0);
    CHECK(BatteryState{50, -120}.discharge_w() == 120);
    CHECK(BatteryState{50, 0}.charge_w() == 0);
    CHECK(BatteryState{50, 0}.discharge_w() == 0);
}

TEST_CASE("headroom normalization") {
    CHECK(normalize_soc_high(95, kParams) == 0.0);
    CHECK(normalize_soc_high(40, kParams) == 1.0);
    CHECK(std::abs(normalize_soc_high(94.9, kParams) - 0.1 / 55.0) < 1e-12);
    CHECK(normalize_soc_high(100, kParams) == 0.0);

    CHECK(normalize_charge(1000, kParams) == 0.0);
    CHECK(normalize_charge(0, kParams) == 1.0);
    CHECK(std::abs(normalize_charge(250, kParams) - 0.75) < 1e-12);

    CHECK(normalize_soc_low(40, kParams) == 0.0);
    CHECK(normalize_soc_low(50, kParams) == 1.0);
    CHECK(normalize_soc_low(95, kParams) == 1.0);  // raw 5.5
    CHECK(normalize_soc_low(10, kParams) == 0.0);

    CHECK(normalize_discharge(1000, kParams) == 0.0);
    CHECK(normalize_discharge(0, kParams) == 1.0);
    CHECK(std::abs(normalize_discharge(600, kParams) - 0.4) < 1e-12);
}

TEST_CASE("controller kind names") {
    CHECK(parse_controller_kind("flc") == ControllerKind::Flc);
    CHECK(parse_controller_kind("proportional") == ControllerKind::Proportional);
    CHECK_THROWS_AS(parse_controller_kind("pid"), ValidationError);
    CHECK(to_string(ControllerKind::Proportional) == "proportional");
}

TEST_CASE("shift corners are exact") {
    const double plus_max = kParams.shift_plus_max();
    const double minus_max = kParams.shift_minus_max();
    CHECK(flc().shift_plus(1.0, 1.0) == 0.0);
    CHECK(flc().shift_minus(1.0, 1.0) == 0.0);
    for (double other : {0.0, 0.3, 0.5, 1.0}) {
        CHECK(flc().shift_plus(0.0, other) == plus_max);
        CHECK(flc().shift_minus(0.0, other) == -minus_max);
        CHECK(flc().shift_plus(other, 0.0) == plus_max);
        CHECK(flc().shift_minus(other, 0.0) == -minus_max);
    }
    CHECK(flc_shift_plus(0.0, 0.7, kParams) == doctest::Approx(0.167250).epsilon(1e-12));
    CHECK(flc_shift_minus(0.0, 0.7, kParams) == doctest::Approx(-0.075).epsilon(1e-12));
}

// Golden values produced by tests/oracle (10^6-sample centroid, independent
// membership and rule code) before the controller was written.
TEST_CASE("shifts match frozen oracle values") {
    struct Golden {
        double x1, x2, plus, minus;
    };
    const Golden cases[] = {
        {0.5, 0.5, 0.083625, -0.0375},
        {0.3, 0.7, 0.0949639830508, -0.0425847457627},
        {0.8, 0.35, 0.0748223684211, -0.0335526315789},
        {0.1, 0.9, 0.136095588235, -0.0610294117647},
    };
    for (const auto& g : cases) {
        CAPTURE(g.x1);
        CAPTURE(g.x2);
        CHECK(std::abs(flc().shift_plus(g.x1, g.x2) - g.plus) < 1e-4 * kParams.shift_plus_max());
        CHECK(std::abs(flc().shift_minus(g.x1, g.x2) - g.minus) <
              1e-4 * kParams.shift_minus_max());
    }
}

TEST_CASE("frozen values still agree with the oracle") {
    CHECK(std::abs(oracle::guard_shift(kParams.shift_plus_max(), 0.8, 0.35) - 0.0748223684211) <
          1e-10);
    CHECK(std::abs(oracle::guard_shift(kParams.shift_minus_max(), 0.1, 0.9) - 0.0610294117647) <
          1e-10);
}

TEST_CASE("shifts stay in range and are monotone on a 21x21 grid") {
    const double plus_max = kParams.shift_plus_max();
    const double minus_max = kParams.shift_minus_max();
    double plus[21][21], minus[21][21];
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            plus[i][j] = flc().shift_plus(i * 0.05, j * 0.05);
            minus[i][j] = flc().shift_minus(i * 0.05, j * 0.05);
            REQUIRE(plus[i][j] >= 0.0);
            REQUIRE(plus[i][j] <= plus_max);
            REQUIRE(minus[i][j] <= 0.0);
            REQUIRE(minus[i][j] >= -minus_max);
        }
    }
    constexpr double slack = 1e-9;
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            if (i > 0) {
                REQUIRE(plus[i][j] <= plus[i - 1][j] + slack);
                REQUIRE(minus[i][j] >= minus[i - 1][j] - slack);
            }
            if (j > 0) {
                REQUIRE(plus[i][j] <= plus[i][j - 1] + slack);
                REQUIRE(minus[i][j] >= minus[i][j - 1] - slack);
            }
        }
    }
}

TEST_CASE("shipped rule bases cover the whole input square") {
    for (const auto* sys : {&flc().charge_guard(), &flc().discharge_guard()}) {
        for (int i = 0; i <= 100; ++i)
            for (int j = 0; j <= 100; ++j) REQUIRE_NOTHROW(sys->infer(i / 100.0, j / 100.0));
    }
}

TEST_CASE("ems_step examples") {
    FrequencyCommand c = ems_step({60, 0}, kParams);
    CHECK(c.d_omega_plus == 0.0);
    CHECK(c.d_omega_minus == 0.0);
    CHECK(c.omega_cmd == 314.16);

    c = ems_step({95, 0}, kParams);
    CHECK(c.d_omega_plus == doctest::Approx(0.167250).epsilon(1e-12));
    CHECK(c.d_omega_minus == 0.0);
    CHECK(std::abs(c.omega_cmd - 314.32725) < 1e-12);

    c = ems_step({40, 0}, kParams);
    CHECK(c.d_omega_plus == 0.0);
    CHECK(c.d_omega_minus == doctest::Approx(-0.075).epsilon(1e-12));
    CHECK(std::abs(c.omega_cmd - 314.085) < 1e-12);
}

TEST_CASE("commanded frequency stays inside the shift bounds") {
    for (int s = 0; s <= 1000; s += 7) {
        for (double p : {-1500.0, -1000.0, -400.0, 0.0, 300.0, 800.0, 1200.0}) {
            const auto c = flc().step({s / 10.0, p});
            REQUIRE(c.omega_cmd == kParams.omega_nominal + c.d_omega_plus + c.d_omega_minus);
            REQUIRE(c.omega_cmd >= 314.085 - 1e-12);
            REQUIRE(c.omega_cmd <= 314.32725 + 1e-12);
        }
    }
}

TEST_CASE("both subsystems are never critical at the same SOC") {
    const double plus_max = kParams.shift_plus_max();
    const double minus_max = kParams.shift_minus_max();
    for (int k = 0; k <= 1000; ++k) {
        const auto c = flc().step({k / 10.0, 0.0});
        const bool plus_critical = c.d_omega_plus > 0.9 * plus_max;
        const bool minus_critical = std::abs(c.d_omega_minus) > 0.9 * minus_max;
        REQUIRE_FALSE((plus_critical && minus_critical));
    }
}

TEST_CASE("proportional baseline") {
    FrequencyCommand c = proportional_step({95, 0}, kParams);
    CHECK(c.d_omega_plus == doctest::Approx(0.167250).epsilon(1e-12));
    CHECK(c.d_omega_minus == 0.0);

    c = proportional_step({40, 0}, kParams);
    CHECK(c.d_omega_plus == 0.0);
    CHECK(c.d_omega_minus == doctest::Approx(-0.075).epsilon(1e-12));

    c = proportional_step({67.5, 0}, kParams);
    CHECK(std::abs(c.d_omega_plus - 0.0836250) < 1e-12);
    CHECK(c.d_omega_minus == 0.0);

    // Power headroom is ignored.
    const auto a = proportional_step({67.5, 0}, kParams);
    const auto b = proportional_step({67.5, 1500}, kParams);
    CHECK(a.omega_cmd == b.omega_cmd);
}

TEST_CASE("calibration maps term centroids onto the bounds") {
    const ShiftCalibration cal(flc().charge_guard());
    CHECK(cal.apply(cal.zero_centroid()) == 0.0);
    CHECK(cal.apply(cal.large_centroid()) == cal.bound());
    CHECK(cal.apply(cal.zero_centroid() - 0.01) == 0.0);
    CHECK(cal.apply(cal.large_centroid() + 0.01) == cal.bound());
    const double mid = 0.5 * (cal.zero_centroid() + cal.large_centroid());
    CHECK(cal.apply(mid) == doctest::Approx(0.5 * cal.bound()));
}

TEST_CASE("make_controller dispatches on kind") {
    CHECK(make_controller(ControllerKind::Flc, kParams)->kind() == ControllerKind::Flc);
    CHECK(make_controller(ControllerKind::Proportional, kParams)->kind() ==
          ControllerKind::Proportional);
}
