#pragma once

#include <Eigen/Dense>
#include <vector>

namespace rspide {

enum class BasisFamily { Gaussian, Multiquadric, Cubic };

/// Radial basis kind plus shape parameter (ignored for Cubic).
/// Gaussian: phi(r) = e^{-(eps r)^2}; MQ: sqrt(1 + (eps r)^2); Cubic: r^3.
struct BasisKind {
    BasisFamily family = BasisFamily::Gaussian;
    double shape = 1.0;
};

void validate(const BasisKind& b);

/// phi(|x - center|) or its first/second derivative in x.
double rbf_eval(const BasisKind& b, double center, double x, int derivative_order);

/// Compensated difference f(x+z) - f(x) - z f'(x) of the basis centered at
/// `center`, evaluated without cancellation for small z (the O(z^2) behaviour
/// is what de-singularizes the jump integrals, so it must survive floating
/// point).
double rbf_compensated_diff(const BasisKind& b, double center, double x, double z);

/// Plain difference f(x+z) - f(x), used outside the unit ball.
double rbf_plain_diff(const BasisKind& b, double center, double x, double z);

/// Collocation nodes, strictly increasing, endpoints included.
struct CollocationGrid {
    std::vector<double> nodes;
    double x_min = 0.0;
    double x_max = 0.0;
    bool uniform = false;
    double spacing = 0.0;

    int size() const { return static_cast<int>(nodes.size()); }
};

CollocationGrid make_grid(std::vector<double> nodes, double x_min, double x_max);

/// n equally spaced nodes on [x_min, x_max], both endpoints included.
CollocationGrid uniform_grid(double x_min, double x_max, int n);

/// Interpolation (Gram) matrix phi_j(x_i) with a spectral condition estimate.
/// ill_conditioned flags condition numbers above 1e14 (shape parameter too
/// flat); the matrix is still returned.
struct GramResult {
    Eigen::MatrixXd matrix;
    double condition = 0.0;
    bool ill_conditioned = false;
};

GramResult gram_matrix(const BasisKind& b, const CollocationGrid& grid);

/// M_k = max_x |phi^{(k)}(x)| for the Gaussian basis, from the extrema of
/// H_k(s) e^{-s^2} (Hermite form of the derivatives). Feeds the
/// de-singularization error bounds.
double gaussian_derivative_bound(const BasisKind& b, int k);

}  // namespace rspide
