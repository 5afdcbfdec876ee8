#pragma once

#include <cstdint>
#include <vector>

#include "wpbc/power.hpp"
#include "wpbc/quadrature.hpp"

namespace wpbc {

/// Tolerance and truncation policy for the interference integrals.
/// outer_truncation_radius bounds the PB integral of the inter-cluster
/// functional; it must equal the Monte Carlo window radius for the two
/// routes to estimate the same (finite-region) quantity.
struct QuadSpec {
    double rel_tol = 1e-4;
    double abs_tol = 1e-8;
    int max_subdivisions = 400;
    double outer_truncation_radius = 100.0;
};

struct AnalyticValue {
    double value = 0.0;
    double error = 0.0;  // propagated quadrature error estimate
};

/// Inner interference kernel: integral over offsets x with |x| <= min(d0,
/// support) of f(x) / (1 + |x|^{alpha1} |x-y-z|^{alpha2} / (s*beta*eta*g)).
/// Evaluated in polar coordinates about the origin.
double q_kernel(double s, Point2 y, Point2 z, const ModelConfig& cfg,
                const QuadSpec& quad);

/// Characteristic functional of intra-cluster interference:
/// integral of exp(-c_bar*D*q(s,y,z)) f(y) dy over the plane.
AnalyticValue charfun_intra(double s, const ModelConfig& cfg, const QuadSpec& quad);

/// Same integral evaluated literally in polar coordinates about the
/// origin with an explicit receiver direction. Slower; kept as an
/// independent route for cross-checks and the isotropy assertion.
AnalyticValue charfun_intra_polar(double s, const ModelConfig& cfg,
                                  const QuadSpec& quad, double receiver_angle);

/// Characteristic functional of inter-cluster interference:
/// exp(-lambda_p * integral over PB locations y, |y| <= truncation, of
/// (1 - exp(-c_bar*D*q(s,y,z)))).
AnalyticValue charfun_inter(double s, const ModelConfig& cfg, const QuadSpec& quad);

/// Power-outage probability. Matern: 1-(d0/a)^2 for d0 < a else 0;
/// Thomas: exp(-d0^2/(2*sigma2)).
double power_outage(const ModelConfig& cfg);

/// CCDF of the (nonzero) transmit power at tau >= beta*P_c/(1-beta*D).
double tx_power_ccdf(double tau, const ModelConfig& cfg);

/// Coverage lower bound (1-p0) * C_a(s*) * C_b(s*) at
/// s* = theta*(1-beta*D)/(beta*P_c). Requires beta > 0.
AnalyticValue success_lower_bound(const ModelConfig& cfg, const QuadSpec& quad);

/// Close-to-full-coverage capacity approximation lambda_p*c_bar*D*(1-p0).
double capacity_approx(const ModelConfig& cfg);

/// Audit of the duty-cycle optimum for the Matern model: dense grid plus
/// golden-section refinement of capacity_approx over D (authoritative),
/// compared against the two closed-form candidates.
struct DutyOptimum {
    double d_star = 0.0;
    double c_star = 0.0;
    double candidate_a = 0.0;         // alpha1 / (2 + alpha1*beta), clipped to 1
    double candidate_stationary = 0.0;  // alpha1 / (beta*(alpha1+2)), clipped to 1
    bool matches_a = false;
    bool matches_stationary = false;
};
DutyOptimum optimal_duty_matern(const ModelConfig& cfg);

/// Inner bound of the (D, beta) operating region:
/// cells where C(theta*(1-beta*D)/(beta*P_c)) >= 1 - epsilon.
struct FeasibleRegion {
    enum class Cell : std::uint8_t { infeasible = 0, feasible = 1, failed = 2 };
    std::vector<double> duty_values;
    std::vector<double> beta_values;
    std::vector<Cell> cells;  // row-major: [i_duty * beta_values.size() + j_beta]
    double epsilon = 0.0;

    Cell at(std::size_t i_duty, std::size_t j_beta) const {
        return cells[i_duty * beta_values.size() + j_beta];
    }
};
FeasibleRegion feasible_region(const ModelConfig& cfg, double epsilon,
                               double grid_step, const QuadSpec& quad);

}  // namespace wpbc
