#include "wpbc/power.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wpbc {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

namespace {

void require(bool ok, const char* invariant) {
    if (!ok) throw std::invalid_argument(std::string("ModelConfig: ") + invariant);
}

}  // namespace

void validate(const ModelConfig& cfg) {
    require(std::isfinite(cfg.lambda_p) && cfg.lambda_p >= 0.0, "lambda_p must be >= 0");
    require(std::isfinite(cfg.c_bar) && cfg.c_bar >= 0.0, "c_bar must be >= 0");
    require(cfg.duty_cycle >= 0.0 && cfg.duty_cycle <= 1.0, "duty_cycle must lie in [0,1]");
    require(cfg.beta >= 0.0 && cfg.beta <= 1.0, "beta must lie in [0,1]");
    require(cfg.beta * cfg.duty_cycle < 1.0, "beta*duty_cycle must be < 1");
    require(cfg.eta > 0.0 && std::isfinite(cfg.eta), "eta must be > 0");
    require(cfg.g > 0.0 && std::isfinite(cfg.g), "g must be > 0");
    require(cfg.circuit_power > 0.0 && std::isfinite(cfg.circuit_power), "circuit_power must be > 0");
    require(cfg.alpha1 > 2.0, "alpha1 must be > 2");
    require(cfg.alpha2 > 2.0, "alpha2 must be > 2");
    require(cfg.theta > 0.0 && std::isfinite(cfg.theta), "theta must be > 0");
    require(cfg.d2d_distance > 0.0 && std::isfinite(cfg.d2d_distance), "d2d_distance must be > 0");
    validate(cfg.cluster);
}

double receive_power(const ModelConfig& cfg, double dist) {
    if (!(dist > 0.0))
        throw std::invalid_argument("receive_power: dist must be > 0");
    return cfg.eta * cfg.g * std::pow(dist, -cfg.alpha1);
}

double distance_threshold(const ModelConfig& cfg) {
    const double ratio = cfg.eta * cfg.g * (1.0 - cfg.beta * cfg.duty_cycle) / cfg.circuit_power;
    return std::pow(ratio, 1.0 / cfg.alpha1);
}

TxPower gated_power(const ModelConfig& cfg, double dist_to_pb) {
    if (!(dist_to_pb > 0.0))
        throw std::invalid_argument("gated_power: dist_to_pb must be > 0");
    if (dist_to_pb > distance_threshold(cfg)) return {0.0, true};
    return {cfg.beta * receive_power(cfg, dist_to_pb), false};
}

}  // namespace wpbc
