#pragma once

#include <functional>
#include <vector>

namespace rspide {

/// Gauss-Legendre rule on [-1, 1]. Nodes/weights are computed once per order
/// (Newton iteration on the Legendre recurrence) and cached.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

/// Integrate f over [a, b] with a single Gauss-Legendre panel.
template <typename F>
auto gl_panel(const F& f, double a, double b, int order) {
    const GaussLegendre& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto acc = f(mid) * 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

/// Integrate f over consecutive panels given by sorted breakpoints.
template <typename F>
auto gl_panels(const F& f, const std::vector<double>& breaks, int order) {
    auto acc = f(breaks.front()) * 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        acc += gl_panel(f, breaks[i], breaks[i + 1], order);
    return acc;
}

/// Geometric breakpoints r^k accumulating at zero: {scale, scale*r, ...,
/// scale*r^(count-1), 0}, returned ascending. The zero endpoint closes the
/// last panel; quadrature nodes stay strictly inside, so z = 0 is never
/// sampled.
std::vector<double> graded_breaks_toward_zero(double scale, double ratio, int count);

/// Adaptive Gauss-Kronrod-free refinement: split [a, b] recursively until the
/// two-panel estimate agrees with the one-panel estimate to tol (absolute).
/// Used by reference/oracle paths, not by the production operator assembly.
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double tol, int max_depth = 40);

}  // namespace rspide
