#include "rspide/rbf_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rspide/errors.hpp"

namespace rspide {

void validate(const BasisKind& b) {
    if (b.family != BasisFamily::Cubic && !(b.shape > 0.0))
        raise(ErrorKind::ValidationError, "shape parameter must be positive");
}

namespace {

double gaussian_eval(double eps, double t, int order) {
    const double e2 = eps * eps;
    const double f = std::exp(-e2 * t * t);
    switch (order) {
        case 0: return f;
        case 1: return -2.0 * e2 * t * f;
        default: return (4.0 * e2 * e2 * t * t - 2.0 * e2) * f;
    }
}

double mq_eval(double eps, double t, int order) {
    const double e2 = eps * eps;
    const double f = std::sqrt(1.0 + e2 * t * t);
    switch (order) {
        case 0: return f;
        case 1: return e2 * t / f;
        default: return e2 / (f * f * f);
    }
}

double cubic_eval(double t, int order) {
    switch (order) {
        case 0: return std::abs(t) * t * t;  // |t|^3
        case 1: return 3.0 * t * std::abs(t);
        default: return 6.0 * std::abs(t);
    }
}

// e^{-w} - 1 + w, accurate for small w.
double expm1_plus(double w) {
    if (std::abs(w) > 0.7) return std::expm1(-w) + w;
    double term = 0.5 * w * w;
    double acc = term;
    for (int k = 3; k <= 22; ++k) {
        term *= -w / k;
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    }
    return acc;
}

}  // namespace

double rbf_eval(const BasisKind& b, double center, double x, int derivative_order) {
    if (derivative_order < 0 || derivative_order > 2)
        raise(ErrorKind::IndexOutOfRange, "derivative order must be 0, 1 or 2");
    const double t = x - center;
    switch (b.family) {
        case BasisFamily::Gaussian: return gaussian_eval(b.shape, t, derivative_order);
        case BasisFamily::Multiquadric: return mq_eval(b.shape, t, derivative_order);
        case BasisFamily::Cubic: return cubic_eval(t, derivative_order);
    }
    raise(ErrorKind::ValidationError, "unknown basis family");
}

double rbf_compensated_diff(const BasisKind& b, double center, double x, double z) {
    const double t = x - center;
    const double t2 = t + z;
    switch (b.family) {
        case BasisFamily::Gaussian: {
            const double e2 = b.shape * b.shape;
            const double w = e2 * z * (2.0 * t + z);
            if (std::abs(w) <= 0.7) {
                // f(x)(e^{-w} - 1 + w) - f(x) e2 z^2, both O(z^2), no rounding
                // of the leading order
                const double f = std::exp(-e2 * t * t);
                return f * (expm1_plus(w) - e2 * z * z);
            }
            return gaussian_eval(b.shape, t2, 0) - gaussian_eval(b.shape, t, 0) -
                   z * gaussian_eval(b.shape, t, 1);
        }
        case BasisFamily::Multiquadric: {
            if (t * t2 > 0.0) {
                const double e2 = b.shape * b.shape;
                const double f0 = mq_eval(b.shape, t, 0);
                const double f1 = mq_eval(b.shape, t2, 0);
                const double s = f0 + f1;
                const double d = t2 * f0 + t * f1;
                return e2 * z * z * (2.0 * t + z) / (d * s * f0);
            }
            return mq_eval(b.shape, t2, 0) - mq_eval(b.shape, t, 0) - z * mq_eval(b.shape, t, 1);
        }
        case BasisFamily::Cubic: {
            if (t * t2 > 0.0) {
                const double sgn = t < 0 ? -1.0 : 1.0;
                return 3.0 * std::abs(t) * z * z + sgn * z * z * z;
            }
            return cubic_eval(t2, 0) - cubic_eval(t, 0) - z * cubic_eval(t, 1);
        }
    }
    raise(ErrorKind::ValidationError, "unknown basis family");
}

double rbf_plain_diff(const BasisKind& b, double center, double x, double z) {
    return rbf_eval(b, center, x + z, 0) - rbf_eval(b, center, x, 0);
}

CollocationGrid make_grid(std::vector<double> nodes, double x_min, double x_max) {
    if (nodes.size() < 2) raise(ErrorKind::ValidationError, "grid needs at least two nodes");
    if (!(x_min < x_max)) raise(ErrorKind::ValidationError, "x_min must be below x_max");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i] < nodes[i + 1]))
            raise(ErrorKind::ValidationError, "grid nodes must be strictly increasing");
    if (nodes.front() != x_min || nodes.back() != x_max)
        raise(ErrorKind::ValidationError, "grid must include both domain endpoints");

    CollocationGrid grid;
    grid.x_min = x_min;
    grid.x_max = x_max;
    const double h = (x_max - x_min) / static_cast<double>(nodes.size() - 1);
    grid.uniform = true;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (std::abs(nodes[i] - (x_min + i * h)) > 1e-12 * std::max(1.0, std::abs(x_max))) {
            grid.uniform = false;
            break;
        }
    }
    grid.spacing = grid.uniform ? h : 0.0;
    grid.nodes = std::move(nodes);
    return grid;
}

CollocationGrid uniform_grid(double x_min, double x_max, int n) {
    if (n < 2) raise(ErrorKind::ValidationError, "uniform grid needs n >= 2");
    if (!(x_min < x_max)) raise(ErrorKind::ValidationError, "x_min must be below x_max");
    std::vector<double> nodes(n);
    const double h = (x_max - x_min) / (n - 1);
    for (int i = 0; i < n; ++i) nodes[i] = x_min + i * h;
    nodes.back() = x_max;
    return make_grid(std::move(nodes), x_min, x_max);
}

GramResult gram_matrix(const BasisKind& b, const CollocationGrid& grid) {
    validate(b);
    const int n = grid.size();
    GramResult result;
    result.matrix.resize(n, n);
    for (int i = 0; i < n; ++i) {
        result.matrix(i, i) = rbf_eval(b, grid.nodes[i], grid.nodes[i], 0);
        for (int j = i + 1; j < n; ++j) {
            const double v = rbf_eval(b, grid.nodes[j], grid.nodes[i], 0);
            result.matrix(i, j) = v;
            result.matrix(j, i) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(result.matrix,
                                                       Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    const double max_abs = ev.cwiseAbs().maxCoeff();
    const double min_abs = ev.cwiseAbs().minCoeff();
    result.condition = min_abs > 0.0 ? max_abs / min_abs : std::numeric_limits<double>::infinity();
    result.ill_conditioned = !(result.condition < 1e14);
    return result;
}

double gaussian_derivative_bound(const BasisKind& b, int k) {
    if (b.family != BasisFamily::Gaussian)
        raise(ErrorKind::ValidationError, "derivative bounds are implemented for Gaussian bases");
    validate(b);
    if (k < 0 || k > 12) raise(ErrorKind::IndexOutOfRange, "derivative bound order out of range");
    if (k == 0) return 1.0;

    // phi^{(k)}(x) = (-eps)^k H_k(eps x) e^{-(eps x)^2}; maximize |H_k(s)|e^{-s^2}.
    std::vector<std::vector<double>> hermite(k + 1);
    hermite[0] = {1.0};
    if (k >= 1) hermite[1] = {0.0, 2.0};
    for (int m = 2; m <= k; ++m) {
        std::vector<double> h(m + 1, 0.0);
        for (std::size_t i = 0; i < hermite[m - 1].size(); ++i) h[i + 1] += 2.0 * hermite[m - 1][i];
        for (std::size_t i = 0; i < hermite[m - 2].size(); ++i)
            h[i] -= 2.0 * (m - 1) * hermite[m - 2][i];
        hermite[m] = std::move(h);
    }
    auto value = [&](double s) {
        double acc = 0.0;
        for (int i = k; i >= 0; --i) acc = acc * s + hermite[k][i];
        return std::abs(acc) * std::exp(-s * s);
    };
    const double s_max = std::sqrt(2.0 * k + 2.0) + 2.0;
    double best = 0.0, best_s = 0.0;
    const int samples = 200000;
    for (int i = 0; i <= samples; ++i) {
        const double s = s_max * i / samples;
        const double v = value(s);
        if (v > best) {
            best = v;
            best_s = s;
        }
    }
    // golden-section polish around the best sample
    double lo = std::max(0.0, best_s - s_max / samples);
    double hi = std::min(s_max, best_s + s_max / samples);
    const double phi_ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
        const double m1 = hi - phi_ratio * (hi - lo);
        const double m2 = lo + phi_ratio * (hi - lo);
        if (value(m1) < value(m2))
            lo = m1;
        else
            hi = m2;
    }
    best = std::max(best, value(0.5 * (lo + hi)));
    return std::pow(b.shape, k) * best;
}

}  // namespace rspide
