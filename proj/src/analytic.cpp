#include "wpbc/analytic.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace wpbc {

namespace {

// (sqrt(u2))^{alpha} with fast paths for the common exponents
inline double pow_half(double u2, double alpha) {
    if (alpha == 3.0) return u2 * std::sqrt(u2);
    if (alpha == 4.0) return u2 * u2;
    if (alpha == 2.0) return u2;
    return std::pow(u2, 0.5 * alpha);
}

inline double clamp_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

// Interference kernel shared by q, C_a and C_b. kappa = s*beta*eta*g is
// the power scale of one interferer seen through the Rayleigh-fading
// Laplace factor 1/(1 + kappa |x|^{-alpha1} u^{-alpha2}).
struct Kernel {
    double kappa = 0.0;
    double alpha1 = 3.0;
    double alpha2 = 3.0;
    double r_max = 0.0;  // min(d0, offset support)
    ClusterModel cluster;
    QuadTol radial_tol;
    QuadTol angular_tol;

    // angle integral of the kernel at offset radius r about a point at
    // distance w from the cluster center
    double angular(double r, double w) const {
        const double c = pow_half(r * r, alpha1) / kappa;
        if (r == 0.0 || w == 0.0) {
            const double u2 = r * r + w * w;
            return 2.0 * M_PI / (1.0 + c * pow_half(u2, alpha2));
        }
        auto f = [&](double phi) {
            const double u2 = r * r + w * w - 2.0 * r * w * std::cos(phi);
            return 1.0 / (1.0 + c * pow_half(u2 < 0.0 ? 0.0 : u2, alpha2));
        };
        // the kernel transitions where |x - w| crosses u* = (kappa/r^alpha1)^{1/alpha2}
        std::array<double, 2> brk{};
        std::size_t nbrk = 0;
        const double ustar = std::pow(1.0 / c, 1.0 / alpha2);
        if (ustar > std::abs(r - w) && ustar < r + w) {
            const double cosphi = clamp_unit((r * r + w * w - ustar * ustar) / (2.0 * r * w));
            const double phi_star = std::acos(cosphi);
            brk[nbrk++] = phi_star;
            if (2.0 * phi_star < M_PI) brk[nbrk++] = 2.0 * phi_star;
        }
        auto out = integrate_adaptive(f, 0.0, M_PI, angular_tol,
                                      std::span<const double>(brk.data(), nbrk));
        return 2.0 * out.value;
    }

    // q as a function of w = |y + z| only; the inner integral is
    // rotation-invariant about the cluster center
    double q(double w) const {
        if (kappa <= 0.0 || r_max <= 0.0) return 0.0;
        auto integrand = [&](double r) {
            return r * offset_pdf(cluster, r) * angular(r, w);
        };
        std::array<double, 4> brk{};
        std::size_t nbrk = 0;
        if (w > 0.0) {
            const double knee = std::pow(kappa / pow_half(w * w, alpha2), 1.0 / alpha1);
            if (knee < r_max) brk[nbrk++] = knee;
            if (0.5 * w < r_max) brk[nbrk++] = 0.5 * w;
            if (w < r_max) brk[nbrk++] = w;
        } else {
            const double knee = std::pow(kappa, 1.0 / (alpha1 + alpha2));
            if (knee < r_max) brk[nbrk++] = knee;
        }
        auto out = integrate_adaptive(integrand, 0.0, r_max, radial_tol,
                                      std::span<const double>(brk.data(), nbrk));
        return out.value;
    }
};

Kernel make_kernel(double s, const ModelConfig& cfg, const QuadSpec& quad) {
    Kernel k;
    k.kappa = s * cfg.beta * cfg.eta * cfg.g;
    k.alpha1 = cfg.alpha1;
    k.alpha2 = cfg.alpha2;
    k.r_max = std::min(distance_threshold(cfg), support_radius(cfg.cluster, quad.abs_tol));
    k.cluster = cfg.cluster;
    k.radial_tol = {0.1 * quad.rel_tol, 0.1 * quad.abs_tol, quad.max_subdivisions};
    k.angular_tol = {0.1 * quad.rel_tol, 0.01 * quad.abs_tol, quad.max_subdivisions};
    return k;
}

void check_s(double s) {
    if (!(s >= 0.0))
        throw std::invalid_argument("characteristic-functional argument s must be >= 0");
}

// Ring mass of the offset density at distance w from a point at distance
// d from the cluster center: w * integral of f(|x - z|) over the circle
// |x| = w. Closed forms for both cluster models.
double ring_mass(const ClusterModel& model, double d, double w) {
    if (const auto* m = std::get_if<MaternCluster>(&model)) {
        const double a = m->radius;
        if (w + d <= a) return 2.0 * w / (a * a);  // 2*pi*w / (pi*a^2)
        if (w >= d + a || d >= w + a) return 0.0;
        const double phi = std::acos(clamp_unit((w * w + d * d - a * a) / (2.0 * w * d)));
        return 2.0 * phi * w / (M_PI * a * a);
    }
    const double s2 = std::get<ThomasCluster>(model).sigma2;
    const double x = w * d / s2;
    if (x < 50.0) {
        return (w / s2) * std::exp(-(w * w + d * d) / (2.0 * s2)) * std::cyl_bessel_i(0.0, x);
    }
    // scaled asymptotic form, e^{-x} I0(x) ~ (1 + 1/(8x) + 9/(128x^2)) / sqrt(2 pi x)
    const double scaled = (1.0 + 1.0 / (8.0 * x) + 9.0 / (128.0 * x * x)) / std::sqrt(2.0 * M_PI * x);
    const double dd = w - d;
    return (w / s2) * std::exp(-dd * dd / (2.0 * s2)) * scaled;
}

std::vector<double> geometric_ladder(double hi, const std::initializer_list<double>& extra) {
    std::vector<double> pts;
    for (double f = 0.5; f > 1.0 / 1024.0; f *= 0.5) pts.push_back(hi * f);
    for (double x : extra)
        if (x > 0.0 && x < hi) pts.push_back(x);
    return pts;
}

}  // namespace

double q_kernel(double s, Point2 y, Point2 z, const ModelConfig& cfg, const QuadSpec& quad) {
    check_s(s);
    validate(cfg);
    if (s == 0.0 || cfg.beta == 0.0) return 0.0;
    const Kernel k = make_kernel(s, cfg, quad);
    return k.q(norm(y + z));
}

AnalyticValue charfun_intra(double s, const ModelConfig& cfg, const QuadSpec& quad) {
    check_s(s);
    validate(cfg);
    const double cbd = cfg.c_bar * cfg.duty_cycle;
    if (s == 0.0 || cfg.beta == 0.0 || cbd == 0.0) return {1.0, 0.0};

    const Kernel k = make_kernel(s, cfg, quad);
    const double d = cfg.d2d_distance;
    const double r_sup = support_radius(cfg.cluster, quad.abs_tol);
    const double w_max = r_sup + d;

    auto integrand = [&](double w) {
        const double ring = ring_mass(cfg.cluster, d, w);
        if (ring == 0.0) return 0.0;
        return std::exp(-cbd * k.q(w)) * ring;
    };
    const QuadTol tol{quad.rel_tol, quad.abs_tol, quad.max_subdivisions};
    auto ladder = geometric_ladder(w_max, {std::abs(d - r_sup), d, r_sup});
    auto out = integrate_adaptive(integrand, 0.0, w_max, tol,
                                  std::span<const double>(ladder.data(), ladder.size()));
    const double inner_err = std::abs(out.value) * cbd * k.radial_tol.rel_tol;
    return {out.value, out.error + inner_err};
}

AnalyticValue charfun_intra_polar(double s, const ModelConfig& cfg,
                                  const QuadSpec& quad, double receiver_angle) {
    check_s(s);
    validate(cfg);
    const double cbd = cfg.c_bar * cfg.duty_cycle;
    if (s == 0.0 || cfg.beta == 0.0 || cbd == 0.0) return {1.0, 0.0};

    const Kernel k = make_kernel(s, cfg, quad);
    const double d = cfg.d2d_distance;
    const double r_sup = support_radius(cfg.cluster, quad.abs_tol);
    const QuadTol tol{quad.rel_tol, quad.abs_tol, quad.max_subdivisions};
    const QuadTol ang_tol{0.3 * quad.rel_tol, 0.1 * quad.abs_tol, quad.max_subdivisions};

    auto radial = [&](double rho) {
        const double f = offset_pdf(cfg.cluster, rho);
        if (f == 0.0 || rho == 0.0) return 0.0;
        auto over_angle = [&](double phi) {
            const double w2 = rho * rho + d * d + 2.0 * rho * d * std::cos(phi - receiver_angle);
            return std::exp(-cbd * k.q(std::sqrt(w2 < 0.0 ? 0.0 : w2)));
        };
        const std::array<double, 2> brk{receiver_angle > 0.0 && receiver_angle < 2.0 * M_PI
                                            ? receiver_angle
                                            : M_PI,
                                        std::fmod(receiver_angle + M_PI, 2.0 * M_PI)};
        auto ang = integrate_adaptive(over_angle, 0.0, 2.0 * M_PI, ang_tol,
                                      std::span<const double>(brk.data(), brk.size()));
        return rho * f * ang.value;
    };
    auto ladder = geometric_ladder(r_sup, {d});
    auto out = integrate_adaptive(radial, 0.0, r_sup, tol,
                                  std::span<const double>(ladder.data(), ladder.size()));
    const double inner_err = std::abs(out.value) * cbd * k.radial_tol.rel_tol;
    return {out.value, out.error + inner_err};
}

AnalyticValue charfun_inter(double s, const ModelConfig& cfg, const QuadSpec& quad) {
    check_s(s);
    validate(cfg);
    const double cbd = cfg.c_bar * cfg.duty_cycle;
    if (s == 0.0 || cfg.beta == 0.0 || cbd == 0.0 || cfg.lambda_p == 0.0) return {1.0, 0.0};

    const Kernel k = make_kernel(s, cfg, quad);
    const double d = cfg.d2d_distance;
    const double radius = quad.outer_truncation_radius;
    if (!(radius > 0.0))
        throw std::invalid_argument("QuadSpec: outer_truncation_radius must be > 0");

    // PB locations y are integrated over the disk |y| <= truncation
    // radius; in terms of w = y + z that disk subtends the arc below.
    //
    // The integrand decays like w^{-2 alpha2 / alpha1} at large w (the
    // near-PB power singularity dominates the naive w^{-alpha2} rate).
    // For alpha2 > alpha1 the tail beyond the truncation radius R
    // contributes O(R^{2 - 2 alpha2/alpha1}); at alpha1 = alpha2 the
    // integral grows logarithmically in R instead of converging, so R is
    // part of the modeled quantity and must match the simulation window.
    auto arc = [&](double w) {
        if (w <= radius - d) return 2.0 * M_PI;
        if (w >= radius + d) return 0.0;
        return 2.0 * std::acos(clamp_unit((w * w + d * d - radius * radius) / (2.0 * w * d)));
    };
    auto integrand = [&](double w) {
        const double a = arc(w);
        if (a == 0.0) return 0.0;
        return -std::expm1(-cbd * k.q(w)) * a * w;
    };
    const QuadTol tol{quad.rel_tol, quad.abs_tol, quad.max_subdivisions};
    auto ladder = geometric_ladder(radius + d, {d, radius - d, radius});
    auto out = integrate_adaptive(integrand, 0.0, radius + d, tol,
                                  std::span<const double>(ladder.data(), ladder.size()));

    const double exponent = cfg.lambda_p * out.value;
    const double value = std::exp(-exponent);
    const double exp_err = cfg.lambda_p * (out.error + std::abs(out.value) * k.radial_tol.rel_tol);
    return {value, value * exp_err};
}

double power_outage(const ModelConfig& cfg) {
    validate(cfg);
    const double d0 = distance_threshold(cfg);
    if (const auto* m = std::get_if<MaternCluster>(&cfg.cluster)) {
        if (d0 >= m->radius) return 0.0;
        const double q = d0 / m->radius;
        return 1.0 - q * q;
    }
    const double s2 = std::get<ThomasCluster>(cfg.cluster).sigma2;
    return std::exp(-d0 * d0 / (2.0 * s2));
}

double tx_power_ccdf(double tau, const ModelConfig& cfg) {
    validate(cfg);
    if (!(cfg.beta > 0.0))
        throw std::invalid_argument("tx_power_ccdf: beta must be > 0 (degenerate support)");
    const double tau_min = cfg.beta * cfg.circuit_power / (1.0 - cfg.beta * cfg.duty_cycle);
    if (!(tau >= tau_min * (1.0 - 1e-12)))
        throw std::invalid_argument("tx_power_ccdf: tau below the transmit-power support");
    const double r_tau = std::pow(cfg.beta * cfg.eta * cfg.g / tau, 1.0 / cfg.alpha1);
    if (const auto* m = std::get_if<MaternCluster>(&cfg.cluster)) {
        const double v = (r_tau / m->radius) * (r_tau / m->radius);
        return v >= 1.0 ? 1.0 : v;
    }
    const double s2 = std::get<ThomasCluster>(cfg.cluster).sigma2;
    return -std::expm1(-r_tau * r_tau / (2.0 * s2));
}

AnalyticValue success_lower_bound(const ModelConfig& cfg, const QuadSpec& quad) {
    validate(cfg);
    if (!(cfg.beta > 0.0))
        throw std::invalid_argument("success_lower_bound: beta must be > 0");
    const double s_star = cfg.theta * (1.0 - cfg.beta * cfg.duty_cycle) /
                          (cfg.beta * cfg.circuit_power);
    const AnalyticValue ca = charfun_intra(s_star, cfg, quad);
    const AnalyticValue cb = charfun_inter(s_star, cfg, quad);
    const double p0 = power_outage(cfg);
    const double value = (1.0 - p0) * ca.value * cb.value;
    const double error = (1.0 - p0) * (ca.error * cb.value + cb.error * ca.value);
    return {value, error};
}

double capacity_approx(const ModelConfig& cfg) {
    validate(cfg);
    return cfg.lambda_p * cfg.c_bar * cfg.duty_cycle * (1.0 - power_outage(cfg));
}

DutyOptimum optimal_duty_matern(const ModelConfig& cfg) {
    validate(cfg);
    if (!std::holds_alternative<MaternCluster>(cfg.cluster))
        throw std::invalid_argument("optimal_duty_matern: requires a Matern cluster model");

    auto value_at = [&](double duty) {
        ModelConfig c = cfg;
        c.duty_cycle = duty;
        return capacity_approx(c);
    };

    const double d_hi = cfg.beta < 1.0 ? 1.0 : 1.0 - 1e-9;
    const double step = 1e-4;
    double best_d = step, best_v = value_at(step);
    for (double duty = 2.0 * step; duty <= d_hi + 0.5 * step; duty += step) {
        const double d_eval = std::min(duty, d_hi);
        const double v = value_at(d_eval);
        if (v > best_v) {
            best_v = v;
            best_d = d_eval;
        }
    }

    // golden-section refinement inside the winning grid cell
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::max(step * 0.5, best_d - step);
    double hi = std::min(d_hi, best_d + step);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = value_at(x1), f2 = value_at(x2);
    for (int i = 0; i < 80 && hi - lo > 1e-12; ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = value_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = value_at(x1);
        }
    }
    const double refined = 0.5 * (lo + hi);
    const double refined_v = value_at(refined);

    DutyOptimum out;
    out.d_star = refined_v >= best_v ? refined : best_d;
    out.c_star = std::max(refined_v, best_v);
    out.candidate_a = std::min(1.0, cfg.alpha1 / (2.0 + cfg.alpha1 * cfg.beta));
    out.candidate_stationary =
        cfg.beta > 0.0 ? std::min(1.0, cfg.alpha1 / (cfg.beta * (cfg.alpha1 + 2.0))) : 1.0;
    out.matches_a = std::abs(out.d_star - out.candidate_a) <= 1e-3;
    out.matches_stationary = std::abs(out.d_star - out.candidate_stationary) <= 1e-3;
    return out;
}

FeasibleRegion feasible_region(const ModelConfig& cfg, double epsilon,
                               double grid_step, const QuadSpec& quad) {
    validate(cfg);
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("feasible_region: epsilon must lie in (0,1)");
    if (!(grid_step > 0.0 && grid_step <= 0.5))
        throw std::invalid_argument("feasible_region: grid_step must lie in (0, 0.5]");

    FeasibleRegion region;
    region.epsilon = epsilon;
    for (double v = 0.5 * grid_step; v < 1.0; v += grid_step) {
        region.duty_values.push_back(v);
        region.beta_values.push_back(v);
    }
    const std::size_t nd = region.duty_values.size();
    const std::size_t nb = region.beta_values.size();
    region.cells.assign(nd * nb, FeasibleRegion::Cell::infeasible);

    auto eval_cell = [&](std::size_t i, std::size_t j) {
        const double duty = region.duty_values[i];
        const double beta = region.beta_values[j];
        if (beta * duty >= 1.0) return FeasibleRegion::Cell::infeasible;
        ModelConfig c = cfg;
        c.duty_cycle = duty;
        c.beta = beta;
        const double s_star = c.theta * (1.0 - beta * duty) / (beta * c.circuit_power);
        try {
            const double value = charfun_intra(s_star, c, quad).value *
                                 charfun_inter(s_star, c, quad).value;
            return value >= 1.0 - epsilon ? FeasibleRegion::Cell::feasible
                                          : FeasibleRegion::Cell::infeasible;
        } catch (const QuadratureError&) {
            return FeasibleRegion::Cell::failed;
        }
    };

    const std::size_t total = nd * nb;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
    auto run_block = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t)
            region.cells[t] = eval_cell(t / nb, t % nb);
    };
    if (workers <= 1) {
        run_block(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t base = total / workers, rem = total % workers;
        std::size_t lo = 0;
        for (unsigned k = 0; k < workers; ++k) {
            const std::size_t hi = lo + base + (k < rem ? 1 : 0);
            pool.emplace_back(run_block, lo, hi);
            lo = hi;
        }
        for (auto& t : pool) t.join();
    }
    return region;
}

}  // namespace wpbc
