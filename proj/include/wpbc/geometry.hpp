#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <variant>
#include <vector>

namespace wpbc {

using Rng = std::mt19937_64;

/// Deterministic sub-stream seed for trial/worker derivation (splitmix64).
/// Identical (master, index) pairs always yield the same seed, so results
/// do not depend on how trials are partitioned across workers.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline double norm(Point2 p) { return std::sqrt(p.x * p.x + p.y * p.y); }

/// Daughter offsets uniform on a disk of the given radius.
struct MaternCluster {
    double radius = 1.0;
};

/// Daughter offsets circular Gaussian with per-axis variance sigma2.
struct ThomasCluster {
    double sigma2 = 1.0;
};

using ClusterModel = std::variant<MaternCluster, ThomasCluster>;

/// Disk centered at the origin; the finite simulation region.
struct Window {
    double radius = 1.0;
};

void validate(const ClusterModel& model);

/// Homogeneous PPP on the window: Poisson(density * area) points,
/// i.i.d. uniform on the disk. density must be finite and >= 0.
std::vector<Point2> sample_ppp(double density, Window window, Rng& rng);

/// One daughter offset. Matern: radius a*sqrt(u), u uniform; Thomas: two
/// independent Gaussian axis draws. Direction isotropic in both cases.
Point2 sample_offset(const ClusterModel& model, Rng& rng);

/// Poisson(mean_size) daughters, each center + independent offset.
std::vector<Point2> sample_cluster(Point2 center, const ClusterModel& model,
                                   double mean_size, Rng& rng);

/// Independent thinning; survivor order preserved. keep_prob in [0,1].
std::vector<Point2> thin(const std::vector<Point2>& points, double keep_prob,
                         Rng& rng);

/// CDF of the offset radius. Matern: min((r/a)^2, 1); Thomas: Rayleigh.
double radial_cdf(const ClusterModel& model, double r);

/// Planar offset density f at distance r from the cluster center.
double offset_pdf(const ClusterModel& model, double r);

/// Radius beyond which the offset law carries at most tail_mass probability.
/// Matern: the disk radius; Thomas: sigma*sqrt(2*ln(1/tail_mass)).
double support_radius(const ClusterModel& model, double tail_mass);

/// Poisson sampler valid for any mean >= 0 (exact distribution).
std::uint64_t sample_poisson(double mean, Rng& rng);

}  // namespace wpbc
