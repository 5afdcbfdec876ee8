#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wpbc/analytic.hpp"

using namespace wpbc;

namespace {

ModelConfig sv() { return ModelConfig{}; }

// Brute-force midpoint-rule evaluation of the inner kernel integral in
// polar coordinates; independent of the adaptive quadrature path.
double q_brute(double s, double w, const ModelConfig& cfg, int nr = 1200, int na = 1200) {
    const double kappa = s * cfg.beta * cfg.eta * cfg.g;
    const double rmax = std::min(distance_threshold(cfg), support_radius(cfg.cluster, 1e-8));
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) * rmax / nr;
        double ang = 0.0;
        for (int j = 0; j < na; ++j) {
            const double phi = (j + 0.5) * M_PI / na;
            const double u2 = r * r + w * w - 2.0 * r * w * std::cos(phi);
            ang += 1.0 / (1.0 + std::pow(r, cfg.alpha1) * std::pow(u2, 0.5 * cfg.alpha2) / kappa);
        }
        ang *= 2.0 * M_PI / na;
        total += r * offset_pdf(cfg.cluster, r) * ang * rmax / nr;
    }
    return total;
}

Point2 w_point(double w, const ModelConfig& cfg) {
    // q depends on y and z through |y+z| only; place both on the x-axis
    return {w - cfg.d2d_distance, 0.0};
}

}  // namespace

TEST_CASE("q_kernel trivial limits") {
    const ModelConfig cfg = sv();
    const QuadSpec quad;
    const Point2 z{cfg.d2d_distance, 0.0};
    CHECK(q_kernel(0.0, w_point(2.0, cfg), z, cfg, quad) == 0.0);

    ModelConfig nearly_absorbing = cfg;
    nearly_absorbing.beta = 1e-9;
    CHECK(q_kernel(1.0, w_point(2.0, cfg), z, nearly_absorbing, quad) < 1e-6);

    CHECK_THROWS_AS(q_kernel(-1.0, w_point(2.0, cfg), z, cfg, quad), std::invalid_argument);
}

TEST_CASE("q_kernel saturates to the gated offset mass as s grows") {
    const ModelConfig cfg = sv();
    const QuadSpec quad;
    const Point2 z{cfg.d2d_distance, 0.0};
    const double mass = radial_cdf(cfg.cluster, distance_threshold(cfg));
    const double q = q_kernel(1e12, w_point(3.0, cfg), z, cfg, quad);
    CHECK(q == doctest::Approx(mass).epsilon(1e-4));
}

TEST_CASE("q_kernel reference values") {
    // reference values from an independent adaptive-quadrature evaluation
    // of the same integral
    const ModelConfig cfg = sv();
    const QuadSpec quad;
    const Point2 z{cfg.d2d_distance, 0.0};
    struct Case {
        double s, w, expected;
    };
    const Case cases[] = {
        {1.0, 0.5, 0.22533331172442353},
        {1.0, 2.0, 0.18606623914354192},
        {79.9, 5.0, 0.3730902932225117},
        {10.0, 30.0, 0.004813796607172374},
    };
    for (const Case& c : cases) {
        const double q = q_kernel(c.s, w_point(c.w, cfg), z, cfg, quad);
        CHECK(q == doctest::Approx(c.expected).epsilon(2e-3));
    }
}

TEST_CASE("q_kernel agrees with a brute-force midpoint grid") {
    const ModelConfig cfg = sv();
    const QuadSpec quad;
    const Point2 z{cfg.d2d_distance, 0.0};
    for (double w : {1.0, 4.0}) {
        const double adaptive = q_kernel(1.0, w_point(w, cfg), z, cfg, quad);
        const double brute = q_brute(1.0, w, cfg);
        CHECK(adaptive == doctest::Approx(brute).epsilon(2e-3));
    }
}

TEST_CASE("charfun_intra limits and reference values") {
    const ModelConfig cfg = sv();
    const QuadSpec quad;

    CHECK(charfun_intra(0.0, cfg, quad).value == 1.0);

    ModelConfig empty = cfg;
    empty.c_bar = 0.0;
    CHECK(charfun_intra(5.0, empty, quad).value == 1.0);

    CHECK(charfun_intra(1.0, cfg, quad).value == doctest::Approx(0.845768815593484).epsilon(2e-3));
    CHECK(charfun_intra(79.9, cfg, quad).value == doctest::Approx(0.530364016696503).epsilon(2e-3));
}

TEST_CASE("charfun_intra matches the literal polar-coordinate route") {
    const ModelConfig cfg = sv();
    const QuadSpec quad;
    for (double s : {1.0, 79.9}) {
        const double fast = charfun_intra(s, cfg, quad).value;
        const double polar = charfun_intra_polar(s, cfg, quad, 0.0).value;
        CHECK(fast == doctest::Approx(polar).epsilon(3e-3));
    }
}

TEST_CASE("charfun values are independent of the receiver direction") {
    const ModelConfig cfg = sv();
    const QuadSpec quad;
    const double at_zero = charfun_intra_polar(10.0, cfg, quad, 0.0).value;
    const double at_quarter = charfun_intra_polar(10.0, cfg, quad, 0.5 * M_PI).value;
    CHECK(at_zero == doctest::Approx(at_quarter).epsilon(2e-3));
}

TEST_CASE("charfun_inter limits and reference values") {
    const QuadSpec quad;
    ModelConfig cfg = sv();
    CHECK(charfun_inter(5.0, [] {
              ModelConfig c;
              c.lambda_p = 0.0;
              return c;
          }(), quad).value == 1.0);
    CHECK(charfun_inter(0.0, cfg, quad).value == 1.0);

    // reference values from an independent adaptive-quadrature evaluation
    ModelConfig sparse = sv();
    sparse.lambda_p = 0.01;
    QuadSpec q60;
    q60.outer_truncation_radius = 60.0;
    CHECK(charfun_inter(1.0, sparse, q60).value ==
          doctest::Approx(0.7657378596331238).epsilon(2e-3));
    CHECK(charfun_inter(79.9, sparse, q60).value ==
          doctest::Approx(0.054586294714593905).epsilon(8e-3));
}

TEST_CASE("characteristic functionals are monotone in s and within [0,1]") {
    ModelConfig cfg = sv();
    cfg.lambda_p = 0.01;
    QuadSpec quad;
    quad.outer_truncation_radius = 60.0;
    double prev_a = 1.0, prev_b = 1.0;
    for (double s : {0.5, 2.0, 10.0, 50.0, 250.0}) {
        const double ca = charfun_intra(s, cfg, quad).value;
        const double cb = charfun_inter(s, cfg, quad).value;
        CHECK(ca >= 0.0);
        CHECK(ca <= 1.0);
        CHECK(cb >= 0.0);
        CHECK(cb <= 1.0);
        CHECK(ca <= prev_a + 1e-6);
        CHECK(cb <= prev_b + 1e-6);
        prev_a = ca;
        prev_b = cb;
    }
}

TEST_CASE("power_outage closed forms") {
    ModelConfig cfg = sv();
    CHECK(power_outage(cfg) == doctest::Approx(6.833786075017809e-8).epsilon(1e-9));

    cfg.cluster = MaternCluster{2.0};
    CHECK(power_outage(cfg) == 0.0);  // d0 exceeds the cluster radius

    cfg.cluster = MaternCluster{20.0};
    CHECK(power_outage(cfg) == doctest::Approx(0.6700239621241957).epsilon(1e-12));
}

TEST_CASE("transmit-power CCDF and the support-boundary identity") {
    for (const ClusterModel cluster : {ClusterModel{ThomasCluster{4.0}}, ClusterModel{MaternCluster{20.0}}}) {
        ModelConfig cfg = sv();
        cfg.cluster = cluster;
        const double tau_min = cfg.beta * cfg.circuit_power / (1.0 - cfg.beta * cfg.duty_cycle);
        // identity with the power-outage probability, 10 significant digits
        CHECK(tx_power_ccdf(tau_min, cfg) ==
              doctest::Approx(1.0 - power_outage(cfg)).epsilon(1e-10));
        CHECK(tx_power_ccdf(1e9, cfg) < 1e-6);
        CHECK_THROWS_AS(tx_power_ccdf(0.5 * tau_min, cfg), std::invalid_argument);
    }

    // Matern saturation branch: tau at or below beta*eta*g/a^alpha1 keeps
    // the whole disk above tau
    ModelConfig small = sv();
    small.cluster = MaternCluster{2.0};
    const double tau_edge = small.beta * small.eta * small.g / std::pow(2.0, small.alpha1);
    CHECK(tx_power_ccdf(tau_edge, small) == 1.0);

    ModelConfig degenerate = sv();
    degenerate.beta = 0.0;
    CHECK_THROWS_AS(tx_power_ccdf(1.0, degenerate), std::invalid_argument);
}

TEST_CASE("CCDF identity holds across random valid configurations") {
    Rng rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        ModelConfig cfg = sv();
        cfg.beta = 0.05 + 0.9 * u(rng);
        cfg.duty_cycle = 0.05 + 0.9 * u(rng);
        cfg.alpha1 = 2.2 + 2.0 * u(rng);
        cfg.eta = 1.0 + 20.0 * u(rng);
        cfg.circuit_power = 1e-3 + 0.1 * u(rng);
        if (u(rng) < 0.5)
            cfg.cluster = MaternCluster{0.5 + 25.0 * u(rng)};
        else
            cfg.cluster = ThomasCluster{0.5 + 25.0 * u(rng)};
        const double tau_min = cfg.beta * cfg.circuit_power / (1.0 - cfg.beta * cfg.duty_cycle);
        const double lhs = tx_power_ccdf(tau_min, cfg);
        const double rhs = 1.0 - power_outage(cfg);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("success_lower_bound limits") {
    QuadSpec quad;

    // theta -> 0 makes the bound approach the transmit probability
    ModelConfig cfg = sv();
    cfg.theta = 1e-12;
    cfg.cluster = MaternCluster{20.0};
    CHECK(success_lower_bound(cfg, quad).value ==
          doctest::Approx(1.0 - 0.6700239621241957).epsilon(1e-4));

    // no interferers: bound = 1 - p0
    ModelConfig quiet = sv();
    quiet.lambda_p = 0.0;
    quiet.c_bar = 0.0;
    CHECK(success_lower_bound(quiet, quad).value ==
          doctest::Approx(1.0 - 6.833786075017809e-8).epsilon(1e-10));

    ModelConfig degenerate = sv();
    degenerate.beta = 0.0;
    CHECK_THROWS_AS(success_lower_bound(degenerate, quad), std::invalid_argument);

    // the bound never exceeds the transmit probability
    for (double beta : {0.1, 0.4, 0.9}) {
        ModelConfig c = sv();
        c.lambda_p = 0.02;
        c.beta = beta;
        CHECK(success_lower_bound(c, quad).value <= 1.0 - power_outage(c) + 1e-12);
    }
}

TEST_CASE("capacity_approx closed form and branches") {
    ModelConfig cfg = sv();
    cfg.cluster = MaternCluster{20.0};
    CHECK(capacity_approx(cfg) == doctest::Approx(0.07919424909019306).epsilon(1e-12));

    // printed product form agrees whenever d0 < a
    const double d0 = distance_threshold(cfg);
    REQUIRE(d0 < 20.0);
    const double printed = cfg.lambda_p * cfg.c_bar * cfg.duty_cycle / (20.0 * 20.0) *
                           std::pow(cfg.eta * cfg.g * (1.0 - cfg.beta * cfg.duty_cycle) /
                                        cfg.circuit_power,
                                    2.0 / cfg.alpha1);
    CHECK(capacity_approx(cfg) == doctest::Approx(printed).epsilon(1e-12));

    ModelConfig idle = cfg;
    idle.duty_cycle = 0.0;
    CHECK(capacity_approx(idle) == 0.0);

    // d0 >= a: every node transmits
    ModelConfig small = sv();
    small.cluster = MaternCluster{2.0};
    CHECK(capacity_approx(small) ==
          doctest::Approx(small.lambda_p * small.c_bar * small.duty_cycle).epsilon(1e-12));
}

TEST_CASE("capacity_approx responds continuously to parameters") {
    ModelConfig cfg = sv();
    cfg.cluster = MaternCluster{20.0};
    const double base = capacity_approx(cfg);
    ModelConfig bumped = cfg;
    bumped.beta += 1e-6;
    CHECK(std::abs(capacity_approx(bumped) - base) < 1e-5);
    bumped = cfg;
    bumped.duty_cycle += 1e-6;
    CHECK(std::abs(capacity_approx(bumped) - base) < 1e-4);
}

TEST_CASE("duty-cycle audit: grid search against both closed forms") {
    // beta = 0.6, alpha1 = 3: the stationary point of D(1-0.6D)^{2/3}
    // sits exactly at D = 1, not at the 0.789 candidate
    ModelConfig cfg = sv();
    cfg.cluster = MaternCluster{30.0};
    const DutyOptimum audit = optimal_duty_matern(cfg);
    CHECK(audit.d_star == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(audit.candidate_a == doctest::Approx(3.0 / 3.8).epsilon(1e-12));
    CHECK(audit.candidate_stationary == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(audit.matches_stationary);
    CHECK_FALSE(audit.matches_a);

    // beta = 1: both candidates coincide at alpha1/(alpha1+2)
    ModelConfig b1 = cfg;
    b1.beta = 1.0;
    b1.duty_cycle = 0.4;
    const DutyOptimum both = optimal_duty_matern(b1);
    CHECK(both.candidate_a == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(both.candidate_stationary == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(both.d_star == doctest::Approx(0.6).epsilon(2e-3));
    CHECK(both.matches_a);
    CHECK(both.matches_stationary);

    // beta -> 0: capacity is monotone in D, optimum clipped at 1
    ModelConfig b0 = cfg;
    b0.beta = 0.01;
    CHECK(optimal_duty_matern(b0).d_star == doctest::Approx(1.0).epsilon(2e-3));

    CHECK_THROWS_AS(optimal_duty_matern(sv()), std::invalid_argument);  // thomas model
}

TEST_CASE("halving rel_tol moves results by less than the reported error") {
    ModelConfig cfg = sv();
    cfg.lambda_p = 0.01;
    QuadSpec quad;
    quad.outer_truncation_radius = 60.0;
    QuadSpec tight = quad;
    tight.rel_tol *= 0.5;

    for (double s : {1.0, 30.0}) {
        const AnalyticValue a = charfun_intra(s, cfg, quad);
        const AnalyticValue a2 = charfun_intra(s, cfg, tight);
        CHECK(std::abs(a.value - a2.value) <= a.error + 1e-12);
        const AnalyticValue b = charfun_inter(s, cfg, quad);
        const AnalyticValue b2 = charfun_inter(s, cfg, tight);
        CHECK(std::abs(b.value - b2.value) <= b.error + 1e-12);
    }
}

TEST_CASE("feasible_region limiting behavior") {
    QuadSpec quad;
    quad.outer_truncation_radius = 50.0;

    // with vanishing interference every cell with beta*D < 1 is feasible
    ModelConfig quiet = sv();
    quiet.lambda_p = 1e-9;
    quiet.c_bar = 1e-9;
    const FeasibleRegion all = feasible_region(quiet, 0.5, 0.25, quad);
    for (auto cell : all.cells) CHECK(cell == FeasibleRegion::Cell::feasible);

    // epsilon -> 0 with dense interferers empties the region
    ModelConfig dense = sv();
    const FeasibleRegion none = feasible_region(dense, 1e-9, 0.25, quad);
    for (auto cell : none.cells) CHECK(cell == FeasibleRegion::Cell::infeasible);

    CHECK_THROWS_AS(feasible_region(dense, 1.5, 0.25, quad), std::invalid_argument);
    CHECK_THROWS_AS(feasible_region(dense, 0.1, 0.75, quad), std::invalid_argument);
}

TEST_CASE("feasibility is a threshold in the bound argument s*") {
    ModelConfig cfg = sv();
    cfg.lambda_p = 0.01;
    QuadSpec quad;
    quad.outer_truncation_radius = 40.0;
    quad.rel_tol = 1e-3;
    const FeasibleRegion region = feasible_region(cfg, 0.35, 0.125, quad);

    double max_feasible_s = 0.0, min_infeasible_s = 1e300;
    for (std::size_t i = 0; i < region.duty_values.size(); ++i) {
        for (std::size_t j = 0; j < region.beta_values.size(); ++j) {
            const double duty = region.duty_values[i];
            const double beta = region.beta_values[j];
            if (beta * duty >= 1.0) continue;
            const double s_star = cfg.theta * (1.0 - beta * duty) / (beta * cfg.circuit_power);
            if (region.at(i, j) == FeasibleRegion::Cell::feasible) {
                CHECK(beta * duty < 1.0);
                max_feasible_s = std::max(max_feasible_s, s_star);
            } else {
                min_infeasible_s = std::min(min_infeasible_s, s_star);
            }
        }
    }
    // C(s) is nonincreasing so the feasible cells occupy an s* interval;
    // allow 2% slack for quadrature at the threshold cell
    CHECK(max_feasible_s <= min_infeasible_s * 1.02);
}
