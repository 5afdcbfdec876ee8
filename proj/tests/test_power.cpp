#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wpbc/power.hpp"

using namespace wpbc;

namespace {

ModelConfig defaults() { return ModelConfig{}; }

// The circuit-power constraint pins d0: the largest distance where
// receive_power * (1 - beta*D) still covers the circuit power. Solved by
// bisection as an oracle independent of the closed form.
double d0_by_bisection(const ModelConfig& cfg) {
    double lo = 1e-6, hi = 1e6;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double budget = receive_power(cfg, mid) * (1.0 - cfg.beta * cfg.duty_cycle);
        (budget >= cfg.circuit_power ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("dBm and dB conversions") {
    CHECK(dbm_to_watts(40.0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(dbm_to_watts(7.0) == doctest::Approx(5.011872336272725e-3).epsilon(1e-12));
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(watts_to_dbm(10.0) == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(db_to_linear(-5.0) == doctest::Approx(0.31622776601683794).epsilon(1e-12));
    CHECK(db_to_linear(0.0) == 1.0);
}

TEST_CASE("receive_power closed form") {
    ModelConfig cfg = defaults();
    CHECK(receive_power(cfg, 1.0) == doctest::Approx(cfg.eta * cfg.g).epsilon(1e-12));
    CHECK(receive_power(cfg, 2.0) == doctest::Approx(1.25).epsilon(1e-12));  // 10/8
    CHECK(receive_power(cfg, 10.0) > receive_power(cfg, 20.0));
    CHECK(receive_power(cfg, 1e6) < 1e-16);
    CHECK_THROWS_AS(receive_power(cfg, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(receive_power(cfg, -1.0), std::invalid_argument);
}

TEST_CASE("distance_threshold at the default link budget") {
    ModelConfig cfg = defaults();
    const double d0 = distance_threshold(cfg);
    CHECK(d0 == doctest::Approx(11.488708158462453).epsilon(1e-12));
    CHECK(d0 == doctest::Approx(d0_by_bisection(cfg)).epsilon(1e-9));
}

TEST_CASE("distance_threshold limits and monotonicity") {
    ModelConfig cfg = defaults();

    ModelConfig relaxed = cfg;
    relaxed.beta = 0.0;
    CHECK(distance_threshold(relaxed) ==
          doctest::Approx(std::pow(cfg.eta * cfg.g / cfg.circuit_power, 1.0 / 3.0)).epsilon(1e-12));
    CHECK(distance_threshold(relaxed) > distance_threshold(cfg));

    ModelConfig heavy = cfg;
    heavy.circuit_power = 1e9;
    CHECK(distance_threshold(heavy) < 1e-2);

    auto d0_with = [&](auto&& tweak) {
        ModelConfig c = cfg;
        tweak(c);
        return distance_threshold(c);
    };
    const double base = distance_threshold(cfg);
    CHECK(d0_with([](ModelConfig& c) { c.beta = 0.8; }) < base);
    CHECK(d0_with([](ModelConfig& c) { c.duty_cycle = 0.6; }) < base);
    CHECK(d0_with([](ModelConfig& c) { c.circuit_power *= 2.0; }) < base);
    CHECK(d0_with([](ModelConfig& c) { c.eta *= 2.0; }) > base);
    CHECK(d0_with([](ModelConfig& c) { c.g = 2.0; }) > base);
}

TEST_CASE("gated_power boundary and decay") {
    ModelConfig cfg = defaults();
    const double d0 = distance_threshold(cfg);

    const TxPower at_boundary = gated_power(cfg, d0);
    CHECK_FALSE(at_boundary.is_outage);
    // boundary power equals the support minimum beta*P_c/(1-beta*D)
    CHECK(at_boundary.value ==
          doctest::Approx(3.956741318110045e-3).epsilon(1e-9));

    const TxPower beyond = gated_power(cfg, 2.0 * d0);
    CHECK(beyond.is_outage);
    CHECK(beyond.value == 0.0);

    CHECK(gated_power(cfg, 1.0).value == doctest::Approx(6.0).epsilon(1e-12));
    CHECK_THROWS_AS(gated_power(cfg, 0.0), std::invalid_argument);

    double prev = std::numeric_limits<double>::infinity();
    for (double d = 0.1; d <= d0; d += 0.35) {
        const TxPower t = gated_power(cfg, d);
        CHECK_FALSE(t.is_outage);
        CHECK(t.value <= prev);
        CHECK(t.value >= at_boundary.value);
        prev = t.value;
    }
}

TEST_CASE("harvested budget covers the circuit power whenever transmitting") {
    ModelConfig cfg = defaults();
    const double d0 = distance_threshold(cfg);
    for (double d = 0.05; d <= d0; d += 0.2) {
        const double p = receive_power(cfg, d);
        const double harvested = (1.0 - cfg.beta) * p * cfg.duty_cycle + p * (1.0 - cfg.duty_cycle);
        CHECK(harvested >= cfg.circuit_power * (1.0 - 1e-12));
    }
}

TEST_CASE("ModelConfig validation names the violated invariant") {
    ModelConfig cfg = defaults();
    CHECK_NOTHROW(validate(cfg));

    ModelConfig bad = cfg;
    bad.beta = 1.0;
    bad.duty_cycle = 1.0;
    CHECK_THROWS_WITH_AS(validate(bad), doctest::Contains("beta*duty_cycle"), std::invalid_argument);

    bad = cfg;
    bad.alpha2 = 2.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    bad = cfg;
    bad.eta = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    bad = cfg;
    bad.theta = -0.3;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    bad = cfg;
    bad.cluster = ThomasCluster{0.0};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}
