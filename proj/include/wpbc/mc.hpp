#pragma once

#include <cstdint>
#include <vector>

#include "wpbc/geometry.hpp"
#include "wpbc/power.hpp"

namespace wpbc {

struct Interferer {
    Point2 position;     // absolute location in the window
    double pb_distance;  // distance to its own cluster's PB, > 0
};

/// One Palm-conditioned network realization: the typical backscatter node
/// sits at the origin, its PB at minus its own cluster offset, the
/// receiver at d2d_distance in a uniform direction, plus every thinned
/// interferer with the distance to its own PB recorded.
struct Scenario {
    Point2 typical_node;  // always the origin
    Point2 typical_pb;
    Point2 receiver;
    std::vector<Interferer> interferers;
    Window window;
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

struct SimConfig {
    ModelConfig model;
    double window_radius = 100.0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0 = hardware concurrency

    // Interferer-population switches for validating the intra/inter
    // decomposition of the interference functional against quadrature.
    bool intra_interference = true;
    bool inter_interference = true;
};

void validate(const SimConfig& sim);

/// Draw order is fixed: typical offset, receiver direction, typical-cluster
/// members (keep flag then offset), then the parent PPP with one cluster
/// per PB. Same seed, same scenario.
Scenario sample_scenario(const SimConfig& sim, Rng& rng);

/// Total interference at the receiver: sum of gated power * Rayleigh
/// fading * distance^{-alpha2} over interferers. Fading is drawn here,
/// one draw per non-outage interferer.
double interference_power(const Scenario& scenario, const ModelConfig& cfg, Rng& rng);

/// P(typical link succeeds): not in power outage and gated signal power
/// times Exp(1) fading meets theta * interference.
Estimate estimate_success(const SimConfig& sim);

/// P(|typical PB offset| > d0).
Estimate estimate_power_outage(const SimConfig& sim);

/// lambda_p * c_bar * D * estimate_success, std_error scaled alike.
Estimate estimate_capacity(const SimConfig& sim);

/// Sample mean of exp(-s * interference), s >= 0.
Estimate estimate_laplace(const SimConfig& sim, double s);

}  // namespace wpbc
