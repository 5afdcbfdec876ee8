#pragma once

#include <vector>

#include "wpbc/analytic.hpp"
#include "wpbc/mc.hpp"

namespace wpbc {

enum class Objective { success_lower_bound, capacity_approx, mc_success, mc_capacity };
enum class OptVariable { duty_cycle, beta, joint };

struct OptProblem {
    Objective objective = Objective::success_lower_bound;
    OptVariable variable = OptVariable::beta;
    double duty_lo = 0.05, duty_hi = 0.95;
    double beta_lo = 0.05, beta_hi = 0.95;
    int budget = 200;  // max objective evaluations
};
void validate(const OptProblem& problem);

/// Everything an objective needs: the base model, quadrature policy for
/// analytic objectives, and the simulation setup for MC objectives. MC
/// objectives reuse sim.seed across evaluations (common random numbers),
/// so the noisy objective is a deterministic function of the parameter.
struct ObjectiveContext {
    ModelConfig model;
    QuadSpec quad;
    SimConfig sim;
};

struct EvalRecord {
    double duty;
    double beta;
    double value;
};

struct OptResult1D {
    double arg = 0.0;
    double value = 0.0;
    bool unimodal = true;  // false: >= 2 separated grid maxima; arg = best grid point
    std::vector<EvalRecord> trace;
};

struct OptResultJoint {
    double duty = 0.0;
    double beta = 0.0;
    double value = 0.0;
    bool budget_exhausted = false;
    std::vector<EvalRecord> trace;
};

/// Coarse grid (step 0.05) to bracket the maximum, then golden-section
/// refinement. variable must be duty_cycle or beta.
OptResult1D maximize_1d(const OptProblem& problem, const ObjectiveContext& ctx);

/// Coordinate ascent alternating 1D maximizations over D and beta until
/// the objective improves by less than 1e-3 or the budget is exhausted.
OptResultJoint maximize_joint(const OptProblem& problem, const ObjectiveContext& ctx);

}  // namespace wpbc
