#include "wpbc/geometry.hpp"

#include <stdexcept>

namespace wpbc {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 applied to the index-th element of the stream anchored
    // at the master seed
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void validate(const ClusterModel& model) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, MaternCluster>) {
                if (!(m.radius > 0.0) || !std::isfinite(m.radius))
                    throw std::invalid_argument("Matern cluster radius must be positive and finite");
            } else {
                if (!(m.sigma2 > 0.0) || !std::isfinite(m.sigma2))
                    throw std::invalid_argument("Thomas cluster variance must be positive and finite");
            }
        },
        model);
}

std::uint64_t sample_poisson(double mean, Rng& rng) {
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw std::invalid_argument("Poisson mean must be finite and >= 0");
    if (mean == 0.0) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(rng);
}

std::vector<Point2> sample_ppp(double density, Window window, Rng& rng) {
    if (!(density >= 0.0) || !std::isfinite(density))
        throw std::invalid_argument("PPP density must be finite and >= 0");
    if (!(window.radius > 0.0))
        throw std::invalid_argument("window radius must be positive");

    const double area = M_PI * window.radius * window.radius;
    const std::uint64_t count = sample_poisson(density * area, rng);

    std::vector<Point2> points;
    points.reserve(count);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (std::uint64_t i = 0; i < count; ++i) {
        // rejection sampling on the unit disk, then scale
        double x, y;
        do {
            x = unit(rng);
            y = unit(rng);
        } while (x * x + y * y > 1.0);
        points.push_back({x * window.radius, y * window.radius});
    }
    return points;
}

Point2 sample_offset(const ClusterModel& model, Rng& rng) {
    return std::visit(
        [&rng](const auto& m) -> Point2 {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, MaternCluster>) {
                std::uniform_real_distribution<double> u01(0.0, 1.0);
                std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
                const double r = m.radius * std::sqrt(u01(rng));
                const double phi = angle(rng);
                return {r * std::cos(phi), r * std::sin(phi)};
            } else {
                std::normal_distribution<double> gauss(0.0, std::sqrt(m.sigma2));
                const double x = gauss(rng);
                const double y = gauss(rng);
                return {x, y};
            }
        },
        model);
}

std::vector<Point2> sample_cluster(Point2 center, const ClusterModel& model,
                                   double mean_size, Rng& rng) {
    if (!(mean_size >= 0.0) || !std::isfinite(mean_size))
        throw std::invalid_argument("cluster mean size must be finite and >= 0");
    const std::uint64_t count = sample_poisson(mean_size, rng);
    std::vector<Point2> points;
    points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        points.push_back(center + sample_offset(model, rng));
    return points;
}

std::vector<Point2> thin(const std::vector<Point2>& points, double keep_prob,
                         Rng& rng) {
    if (!(keep_prob >= 0.0 && keep_prob <= 1.0))
        throw std::invalid_argument("thinning probability must lie in [0,1]");
    std::vector<Point2> kept;
    kept.reserve(points.size());
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (const Point2& p : points)
        if (u01(rng) < keep_prob) kept.push_back(p);
    return kept;
}

double radial_cdf(const ClusterModel& model, double r) {
    if (!(r >= 0.0))
        throw std::invalid_argument("radius must be >= 0");
    return std::visit(
        [r](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, MaternCluster>) {
                const double q = r / m.radius;
                return q >= 1.0 ? 1.0 : q * q;
            } else {
                return -std::expm1(-r * r / (2.0 * m.sigma2));
            }
        },
        model);
}

double offset_pdf(const ClusterModel& model, double r) {
    return std::visit(
        [r](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, MaternCluster>) {
                return r <= m.radius ? 1.0 / (M_PI * m.radius * m.radius) : 0.0;
            } else {
                return std::exp(-r * r / (2.0 * m.sigma2)) / (2.0 * M_PI * m.sigma2);
            }
        },
        model);
}

double support_radius(const ClusterModel& model, double tail_mass) {
    return std::visit(
        [tail_mass](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, MaternCluster>) {
                return m.radius;
            } else {
                if (tail_mass >= 1.0) return 0.0;
                return std::sqrt(-2.0 * m.sigma2 * std::log(tail_mass));
            }
        },
        model);
}

}  // namespace wpbc
