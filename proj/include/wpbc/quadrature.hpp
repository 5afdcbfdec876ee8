#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace wpbc {

struct QuadTol {
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    int max_subdivisions = 400;
};

struct QuadOutcome {
    double value = 0.0;
    double error = 0.0;  // accumulated |K15 - G7| estimate
    int panels = 0;
};

/// Thrown when the panel budget is exhausted before the tolerance is met;
/// carries the best value and the achieved error estimate.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const char* what, double value, double achieved_error)
        : std::runtime_error(what), value(value), achieved_error(achieved_error) {}
    double value;
    double achieved_error;
};

namespace gk_detail {

// Gauss-Kronrod 7-15 nodes and weights (positive half-axis).
inline constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    double value;
    double error;
};

template <class F>
Panel evaluate(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fsum;
        if (i == 7) {
            fsum = f(mid);
        } else {
            fsum = f(mid - half * kNodes[i]) + f(mid + half * kNodes[i]);
        }
        kron += kWeights[i] * fsum;
        if (i % 2 == 1) gauss += gWeights[i / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace gk_detail

/// Adaptive 1D integration over [a,b]: worst-panel bisection until the
/// summed error estimate meets max(abs_tol, rel_tol*|value|). Interior
/// breakpoints seed the initial panel set (kinks, known small-scale
/// structure). Throws QuadratureError if max_subdivisions is exhausted.
template <class F>
QuadOutcome integrate_adaptive(F&& f, double a, double b, const QuadTol& tol,
                               std::span<const double> breakpoints = {}) {
    if (!(b > a)) return {0.0, 0.0, 0};

    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    auto worse = [](const gk_detail::Panel& x, const gk_detail::Panel& y) {
        return x.error < y.error;
    };
    std::priority_queue<gk_detail::Panel, std::vector<gk_detail::Panel>, decltype(worse)> heap(worse);

    double value = 0.0, error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto p = gk_detail::evaluate(f, edges[i], edges[i + 1]);
        value += p.value;
        error += p.error;
        heap.push(p);
    }

    int splits = 0;
    while (error > std::max(tol.abs_tol, tol.rel_tol * std::abs(value))) {
        if (splits >= tol.max_subdivisions || heap.empty())
            throw QuadratureError("quadrature did not converge within the subdivision budget",
                                  value, error);
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw QuadratureError("quadrature panel underflow", value, error);
        const auto left = gk_detail::evaluate(f, worst.a, mid);
        const auto right = gk_detail::evaluate(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    return {value, error, static_cast<int>(heap.size())};
}

}  // namespace wpbc
