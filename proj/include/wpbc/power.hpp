#pragma once

#include "wpbc/geometry.hpp"

namespace wpbc {

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);

/// All scalar parameters of the network model. Powers in watts, SIR
/// threshold linear; the config-file layer converts from dBm/dB.
struct ModelConfig {
    double lambda_p = 0.2;        // PB density, points/m^2
    double c_bar = 3.0;           // mean cluster size
    double duty_cycle = 0.4;      // backscatter duty cycle D
    double beta = 0.6;            // reflection coefficient
    double eta = 10.0;            // per-node PB transmit power, W (40 dBm)
    double g = 1.0;               // beamforming gain
    double circuit_power = 5.011872336272722e-3;  // W (7 dBm)
    double alpha1 = 3.0;          // WPT path-loss exponent
    double alpha2 = 3.0;          // D2D path-loss exponent
    double theta = 0.31622776601683794;  // SIR threshold, linear (-5 dB)
    double d2d_distance = 1.0;    // transmitter-receiver separation, m
    ClusterModel cluster = ThomasCluster{4.0};
};

/// Throws std::invalid_argument naming the violated invariant.
void validate(const ModelConfig& cfg);

/// Backscatter transmit power; zero exactly when the node is in power
/// outage, otherwise at least beta*P_c/(1 - beta*D).
struct TxPower {
    double value = 0.0;
    bool is_outage = true;
};

/// WPT receive power eta*g*dist^{-alpha1}. dist = 0 rejected: the
/// far-field law has a singularity there and offsets of exactly zero
/// occur with probability zero, so callers resample instead of clamping.
double receive_power(const ModelConfig& cfg, double dist);

/// Largest PB separation at which the circuit-power constraint holds:
/// d0 = [eta*g*(1 - beta*D)/P_c]^{1/alpha1}.
double distance_threshold(const ModelConfig& cfg);

/// Transmit power after the circuit gate: beta*eta*g*dist^{-alpha1} for
/// dist <= d0 (boundary transmits), zero beyond.
TxPower gated_power(const ModelConfig& cfg, double dist_to_pb);

}  // namespace wpbc
