#include "wpbc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wpbc {

namespace {

struct Eval {
    double value;
    double noise;  // std_error for MC objectives, 0 for analytic
};

Eval evaluate(const ObjectiveContext& ctx, Objective objective, double duty, double beta) {
    ModelConfig c = ctx.model;
    c.duty_cycle = duty;
    c.beta = beta;
    switch (objective) {
        case Objective::success_lower_bound:
            return {success_lower_bound(c, ctx.quad).value, 0.0};
        case Objective::capacity_approx:
            return {capacity_approx(c), 0.0};
        case Objective::mc_success: {
            SimConfig sim = ctx.sim;
            sim.model = c;
            const Estimate e = estimate_success(sim);
            return {e.value, e.std_error};
        }
        case Objective::mc_capacity: {
            SimConfig sim = ctx.sim;
            sim.model = c;
            const Estimate e = estimate_capacity(sim);
            return {e.value, e.std_error};
        }
    }
    throw std::logic_error("unknown objective");
}

struct Search1D {
    double lo, hi;
    bool vary_duty;  // else vary beta
};

Search1D bounds_for(const OptProblem& p, const ModelConfig& model, OptVariable var) {
    Search1D s{};
    if (var == OptVariable::duty_cycle) {
        s.vary_duty = true;
        s.lo = p.duty_lo;
        s.hi = p.duty_hi;
        // keep beta*D < 1 by shrinking the interval, never by penalty
        if (model.beta > 0.0) s.hi = std::min(s.hi, (1.0 - 1e-9) / model.beta);
    } else {
        s.vary_duty = false;
        s.lo = p.beta_lo;
        s.hi = p.beta_hi;
        if (model.duty_cycle > 0.0) s.hi = std::min(s.hi, (1.0 - 1e-9) / model.duty_cycle);
    }
    if (!(s.lo <= s.hi))
        throw std::invalid_argument("maximize_1d: empty search interval after beta*D < 1 shrink");
    return s;
}

OptResult1D search_1d(const OptProblem& problem, const ObjectiveContext& ctx,
                      OptVariable var, int budget) {
    const Search1D span = bounds_for(problem, ctx.model, var);
    const double duty0 = ctx.model.duty_cycle;
    const double beta0 = ctx.model.beta;

    OptResult1D result;
    int used = 0;
    auto probe = [&](double x) {
        const double duty = span.vary_duty ? x : duty0;
        const double beta = span.vary_duty ? beta0 : x;
        const Eval e = evaluate(ctx, problem.objective, duty, beta);
        result.trace.push_back({duty, beta, e.value});
        ++used;
        return e;
    };

    // coarse grid, step 0.05
    std::vector<double> xs;
    for (double x = span.lo; x < span.hi - 1e-12; x += 0.05) xs.push_back(x);
    xs.push_back(span.hi);

    std::vector<double> vs;
    double noise = 0.0;
    for (double x : xs) {
        if (used >= budget - 1) break;
        const Eval e = probe(x);
        vs.push_back(e.value);
        noise = std::max(noise, e.noise);
    }
    const std::size_t n = vs.size();
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (vs[i] > vs[best]) best = i;

    // count separated local maxima beyond the noise floor
    const double tol = 2.0 * noise;
    int maxima = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool up = i == 0 || vs[i] > vs[i - 1] + tol;
        const bool down = i + 1 == n || vs[i] > vs[i + 1] + tol;
        if (up && down) ++maxima;
    }
    if (maxima >= 2) {
        result.unimodal = false;
        result.arg = xs[best];
        result.value = vs[best];
        return result;
    }

    // golden-section refinement in the bracket around the best grid point
    double lo = best > 0 ? xs[best - 1] : span.lo;
    double hi = best + 1 < n ? xs[best + 1] : span.hi;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = probe(x1).value, f2 = probe(x2).value;
    while (hi - lo > 1e-7 && used < budget - 1) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = probe(x2).value;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = probe(x1).value;
        }
    }

    // fresh evaluation at the returned argument, never a cached value
    double arg = 0.5 * (lo + hi);
    double val = probe(arg).value;
    if (vs[best] > val) {
        arg = xs[best];
        val = probe(arg).value;
    }
    result.arg = arg;
    result.value = val;
    return result;
}

}  // namespace

void validate(const OptProblem& problem) {
    auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in_unit(problem.duty_lo) || !in_unit(problem.duty_hi) ||
        !in_unit(problem.beta_lo) || !in_unit(problem.beta_hi))
        throw std::invalid_argument("OptProblem: bounds must lie within [0,1]");
    if (problem.duty_lo > problem.duty_hi || problem.beta_lo > problem.beta_hi)
        throw std::invalid_argument("OptProblem: lower bounds must not exceed upper bounds");
    if (problem.budget < 3)
        throw std::invalid_argument("OptProblem: budget must be >= 3");
}

OptResult1D maximize_1d(const OptProblem& problem, const ObjectiveContext& ctx) {
    validate(problem);
    validate(ctx.model);
    if (problem.variable == OptVariable::joint)
        throw std::invalid_argument("maximize_1d: variable must be duty_cycle or beta");
    return search_1d(problem, ctx, problem.variable, problem.budget);
}

OptResultJoint maximize_joint(const OptProblem& problem, const ObjectiveContext& ctx) {
    validate(problem);
    validate(ctx.model);
    if (problem.variable != OptVariable::joint)
        throw std::invalid_argument("maximize_joint: variable must be joint");

    OptResultJoint result;
    ObjectiveContext cur = ctx;
    cur.model.duty_cycle = std::clamp(ctx.model.duty_cycle, problem.duty_lo, problem.duty_hi);
    cur.model.beta = std::clamp(ctx.model.beta, problem.beta_lo, problem.beta_hi);

    Eval e0 = evaluate(cur, problem.objective, cur.model.duty_cycle, cur.model.beta);
    result.trace.push_back({cur.model.duty_cycle, cur.model.beta, e0.value});
    double value = e0.value;
    int used = 1;

    for (int sweep = 0; sweep < 64; ++sweep) {
        const double before = value;
        for (OptVariable var : {OptVariable::duty_cycle, OptVariable::beta}) {
            const int remaining = problem.budget - used;
            if (remaining < 3) {
                result.budget_exhausted = true;
                break;
            }
            OptResult1D step = search_1d(problem, cur, var, remaining);
            used += static_cast<int>(step.trace.size());
            result.trace.insert(result.trace.end(), step.trace.begin(), step.trace.end());
            if (step.value > value) {
                value = step.value;
                if (var == OptVariable::duty_cycle)
                    cur.model.duty_cycle = step.arg;
                else
                    cur.model.beta = step.arg;
            }
        }
        if (result.budget_exhausted || value - before < 1e-3) break;
    }

    result.duty = cur.model.duty_cycle;
    result.beta = cur.model.beta;
    result.value = value;
    return result;
}

}  // namespace wpbc
