#include "wpbc/mc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace wpbc {

namespace {

// r^{-alpha} with fast paths for the common integer exponents
inline double pow_neg(double r, double alpha) {
    if (alpha == 3.0) return 1.0 / (r * r * r);
    if (alpha == 4.0) {
        const double r2 = r * r;
        return 1.0 / (r2 * r2);
    }
    return std::pow(r, -alpha);
}

// (sqrt(r2))^{-alpha}
inline double pow_neg_sq(double r2, double alpha) {
    if (alpha == 3.0) return 1.0 / (r2 * std::sqrt(r2));
    if (alpha == 4.0) return 1.0 / (r2 * r2);
    return std::pow(r2, -0.5 * alpha);
}

// Offset with nonzero norm; a zero draw has probability zero but would
// hit the path-loss singularity, so it is redrawn.
inline Point2 nonzero_offset(const ClusterModel& model, Rng& rng) {
    Point2 p;
    do {
        p = sample_offset(model, rng);
    } while (p.x == 0.0 && p.y == 0.0);
    return p;
}

// Offset sampler with the per-call distribution state hoisted out of the
// cluster loop; several million draws per estimate make the construction
// cost visible.
struct OffsetSampler {
    explicit OffsetSampler(const ClusterModel& model) {
        if (const auto* m = std::get_if<MaternCluster>(&model)) {
            radius = m->radius;
            thomas = false;
        } else {
            gauss = std::normal_distribution<double>(0.0, std::sqrt(std::get<ThomasCluster>(model).sigma2));
            thomas = true;
        }
    }

    Point2 operator()(Rng& rng) {
        Point2 p;
        do {
            if (thomas) {
                p = {gauss(rng), gauss(rng)};
            } else {
                const double r = radius * std::sqrt(u01(rng));
                const double phi = 2.0 * M_PI * u01(rng);
                p = {r * std::cos(phi), r * std::sin(phi)};
            }
        } while (p.x == 0.0 && p.y == 0.0);
        return p;
    }

    bool thomas = true;
    double radius = 1.0;
    std::normal_distribution<double> gauss{0.0, 1.0};
    std::uniform_real_distribution<double> u01{0.0, 1.0};
};

void sample_scenario_into(Scenario& scn, const SimConfig& sim, Rng& rng) {
    const ModelConfig& cfg = sim.model;
    scn.window = Window{sim.window_radius};
    scn.typical_node = {0.0, 0.0};
    scn.interferers.clear();

    OffsetSampler offset(cfg.cluster);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    const Point2 v = offset(rng);
    scn.typical_pb = {-v.x, -v.y};

    const double phi = 2.0 * M_PI * u01(rng);
    scn.receiver = {cfg.d2d_distance * std::cos(phi), cfg.d2d_distance * std::sin(phi)};

    // A Poisson(c_bar) cluster thinned with probability D has Poisson(
    // c_bar*D) surviving members, so the survivors are sampled directly.
    const double active_mean = cfg.c_bar * cfg.duty_cycle;
    if (!(active_mean > 0.0)) return;
    std::poisson_distribution<std::uint64_t> active_size(active_mean);

    if (sim.intra_interference) {
        const std::uint64_t n = active_size(rng);
        for (std::uint64_t k = 0; k < n; ++k) {
            const Point2 w = offset(rng);
            scn.interferers.push_back({scn.typical_pb + w, norm(w)});
        }
    }

    if (sim.inter_interference && cfg.lambda_p > 0.0) {
        const double area = M_PI * sim.window_radius * sim.window_radius;
        const std::uint64_t n_pb = sample_poisson(cfg.lambda_p * area, rng);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (std::uint64_t i = 0; i < n_pb; ++i) {
            const std::uint64_t n = active_size(rng);
            if (n == 0) continue;  // the PB position is never needed
            double x, y;
            do {
                x = unit(rng);
                y = unit(rng);
            } while (x * x + y * y > 1.0);
            const Point2 pb{x * sim.window_radius, y * sim.window_radius};
            for (std::uint64_t k = 0; k < n; ++k) {
                const Point2 w = offset(rng);
                scn.interferers.push_back({pb + w, norm(w)});
            }
        }
    }
}

// Deterministic mean/std_error reduction: per-trial values are stored by
// index and reduced in index order with Neumaier compensation, so the
// result is independent of the worker partition.
double compensated_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

template <class MakeWorkerFn>
Estimate run_trials(const SimConfig& sim, MakeWorkerFn&& make_worker) {
    const std::uint64_t n = sim.trials;
    std::vector<double> values(n);

    unsigned workers = sim.workers != 0 ? sim.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));

    auto run_block = [&](std::uint64_t lo, std::uint64_t hi) {
        auto trial = make_worker();
        for (std::uint64_t i = lo; i < hi; ++i) {
            Rng rng(derive_seed(sim.seed, i));
            values[i] = trial(i, rng);
        }
    };

    if (workers <= 1) {
        run_block(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t base = n / workers, rem = n % workers;
        std::uint64_t lo = 0;
        for (unsigned k = 0; k < workers; ++k) {
            const std::uint64_t hi = lo + base + (k < rem ? 1 : 0);
            pool.emplace_back(run_block, lo, hi);
            lo = hi;
        }
        for (auto& t : pool) t.join();
    }

    const double mean = compensated_sum(values) / static_cast<double>(n);
    double std_error = 0.0;
    if (n > 1) {
        std::vector<double> sq(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double d = values[i] - mean;
            sq[i] = d * d;
        }
        const double m2 = compensated_sum(sq);
        std_error = std::sqrt(m2 / (static_cast<double>(n - 1) * static_cast<double>(n)));
    }
    return {mean, std_error, n, sim.seed};
}

}  // namespace

void validate(const SimConfig& sim) {
    validate(sim.model);
    if (!(sim.window_radius > 0.0) || !std::isfinite(sim.window_radius))
        throw std::invalid_argument("SimConfig: window_radius must be > 0");
    if (sim.trials < 1)
        throw std::invalid_argument("SimConfig: trials must be >= 1");
}

Scenario sample_scenario(const SimConfig& sim, Rng& rng) {
    validate(sim);
    Scenario scn;
    sample_scenario_into(scn, sim, rng);
    return scn;
}

double interference_power(const Scenario& scn, const ModelConfig& cfg, Rng& rng) {
    const double d0 = distance_threshold(cfg);
    const double reflected = cfg.beta * cfg.eta * cfg.g;
    std::exponential_distribution<double> fading(1.0);

    double total = 0.0;
    for (const Interferer& it : scn.interferers) {
        if (it.pb_distance > d0) continue;  // circuit gate: silent
        const double q = reflected * pow_neg(it.pb_distance, cfg.alpha1);
        const double dx = it.position.x - scn.receiver.x;
        const double dy = it.position.y - scn.receiver.y;
        const double r2 = dx * dx + dy * dy;
        if (r2 == 0.0) {
            total = std::numeric_limits<double>::infinity();
            fading(rng);
            continue;
        }
        total += q * fading(rng) * pow_neg_sq(r2, cfg.alpha2);
    }
    return total;
}

Estimate estimate_success(const SimConfig& sim) {
    validate(sim);
    const ModelConfig cfg = sim.model;
    const double d0 = distance_threshold(cfg);
    const double reflected = cfg.beta * cfg.eta * cfg.g;

    return run_trials(sim, [&sim, cfg, d0, reflected]() {
        return [&sim, cfg, d0, reflected, scn = Scenario{}](std::uint64_t, Rng& rng) mutable {
            sample_scenario_into(scn, sim, rng);
            const double interference = interference_power(scn, cfg, rng);
            const double pb_dist = norm(scn.typical_pb);
            if (pb_dist > d0) return 0.0;  // power outage
            const double signal = reflected * pow_neg(pb_dist, cfg.alpha1);
            if (signal <= 0.0) return 0.0;  // beta == 0: nothing reflected
            std::exponential_distribution<double> fading(1.0);
            return signal * fading(rng) >= cfg.theta * interference ? 1.0 : 0.0;
        };
    });
}

Estimate estimate_power_outage(const SimConfig& sim) {
    validate(sim);
    const ModelConfig cfg = sim.model;
    const double d0 = distance_threshold(cfg);
    return run_trials(sim, [cfg, d0]() {
        return [cfg, d0](std::uint64_t, Rng& rng) {
            const Point2 v = nonzero_offset(cfg.cluster, rng);
            return norm(v) > d0 ? 1.0 : 0.0;
        };
    });
}

Estimate estimate_capacity(const SimConfig& sim) {
    Estimate ps = estimate_success(sim);
    const double scale = sim.model.lambda_p * sim.model.c_bar * sim.model.duty_cycle;
    return {ps.value * scale, ps.std_error * scale, ps.trials, ps.seed};
}

Estimate estimate_laplace(const SimConfig& sim, double s) {
    validate(sim);
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("estimate_laplace: s must be finite and >= 0");
    const ModelConfig cfg = sim.model;
    return run_trials(sim, [&sim, cfg, s]() {
        return [&sim, cfg, s, scn = Scenario{}](std::uint64_t, Rng& rng) mutable {
            sample_scenario_into(scn, sim, rng);
            return std::exp(-s * interference_power(scn, cfg, rng));
        };
    });
}

}  // namespace wpbc
