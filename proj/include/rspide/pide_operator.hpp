#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "rspide/errors.hpp"
#include "rspide/levy_measures.hpp"
#include "rspide/model.hpp"
#include "rspide/quadrature.hpp"
#include "rspide/rbf_basis.hpp"

namespace rspide {

/// Quadrature layout for the jump integrals. The inner region (0, inner_split]
/// carries the |z|^{-1-alpha} singularity and is covered by geometrically
/// graded panels accumulating at zero; the outer region [1, z_cut] uses plain
/// Gauss-Legendre panels. The compensator indicator changes at |z| = 1, which
/// is always a panel boundary.
struct QuadratureConfig {
    double z_cut = 10.0;
    double inner_split = 1.0;
    int panels_inner = 32;
    double grading_ratio = 0.7;
    int panels_outer = 16;
    int gl_order = 16;
};

void validate(const QuadratureConfig& cfg);

/// The four pieces of the de-singularized integral, ordered as
/// { [-z_cut,-1], [-1,0), (0,1], [1,z_cut] }. Inner pieces use the
/// compensated integrand, outer pieces the plain difference.
template <typename Scalar>
struct LevyIntegralParts {
    Scalar outer_minus{};
    Scalar inner_minus{};
    Scalar inner_plus{};
    Scalar outer_plus{};

    Scalar total() const { return outer_minus + inner_minus + inner_plus + outer_plus; }
};

namespace detail {

/// \int_0^b h(z) dz where h(z) ~ z^{1-alpha} x smooth near zero. The power map
/// z = b t^{1/(2-alpha)} removes the algebraic endpoint behaviour of the
/// closing panel; Gauss-Legendre nodes stay strictly inside (0, b).
template <typename F>
auto power_mapped_panel(const F& h, double b, double alpha, int order) {
    const double p = 1.0 / (2.0 - alpha);
    auto g = [&](double t) {
        const double z = b * std::pow(t, p);
        return h(z) * (b * p * std::pow(t, p - 1.0));
    };
    return gl_panel(g, 0.0, 1.0, order);
}

}  // namespace detail

/// De-singularized integral of a compensated test function against a GTS
/// measure, truncated at |z| = z_cut:
///   \int (f(x+z) - f(x) - z 1_{|z|<=1} f'(x)) nu(dz).
/// `reg` must return the compensated difference f(x+z)-f(x)-z f'(x) evaluated
/// stably near z = 0; `plain` returns f(x+z)-f(x). Shared by the operator
/// assembly (f = basis function) and the characteristic-exponent fallback
/// (f = e^{iwz}, complex-valued).
template <typename Reg, typename Plain>
auto desingularized_levy_integral(const GtsParams& nu, const QuadratureConfig& cfg,
                                  Reg&& reg, Plain&& plain)
    -> LevyIntegralParts<decltype(reg(0.5))> {
    using Scalar = decltype(reg(0.5));
    validate(cfg);
    validate(nu);

    auto one_side = [&](double sgn, double c, double beta, double alpha) {
        auto density = [=](double r) { return c * std::exp(-beta * r) / std::pow(r, 1.0 + alpha); };
        auto h_inner = [&](double r) { return reg(sgn * r) * density(r); };
        auto h_outer = [&](double r) { return plain(sgn * r) * density(r); };

        Scalar inner{};
        const std::vector<double> breaks =
            graded_breaks_toward_zero(cfg.inner_split, cfg.grading_ratio, cfg.panels_inner);
        if (alpha > 0.0)
            inner += detail::power_mapped_panel(h_inner, breaks[1], alpha, cfg.gl_order);
        else
            inner += gl_panel(h_inner, 0.0, breaks[1], cfg.gl_order);
        for (std::size_t i = 1; i + 1 < breaks.size(); ++i)
            inner += gl_panel(h_inner, breaks[i], breaks[i + 1], cfg.gl_order);
        if (cfg.inner_split < 1.0) {
            const int mid_panels = std::max(4, cfg.panels_inner / 4);
            const double width = (1.0 - cfg.inner_split) / mid_panels;
            for (int i = 0; i < mid_panels; ++i)
                inner += gl_panel(h_inner, cfg.inner_split + i * width,
                                  cfg.inner_split + (i + 1) * width, cfg.gl_order);
        }

        Scalar outer{};
        const double width = (cfg.z_cut - 1.0) / cfg.panels_outer;
        for (int i = 0; i < cfg.panels_outer; ++i)
            outer += gl_panel(h_outer, 1.0 + i * width, 1.0 + (i + 1) * width, cfg.gl_order);
        return std::pair<Scalar, Scalar>(inner, outer);
    };

    LevyIntegralParts<Scalar> parts;
    auto plus = one_side(+1.0, nu.c_plus, nu.beta_plus, nu.alpha_plus);
    auto minus = one_side(-1.0, nu.c_minus, nu.beta_minus, nu.alpha_minus);
    parts.inner_plus = plus.first;
    parts.outer_plus = plus.second;
    parts.inner_minus = minus.first;
    parts.outer_minus = minus.second;
    return parts;
}

/// De-singularized jump integral of a basis function centered at `center`,
/// evaluated at `x`. Cubic bases are only admissible for finite-variation
/// measures (max alpha < 1).
LevyIntegralParts<double> singular_integral_parts(const BasisKind& basis, double center,
                                                  double x, const GtsParams& nu,
                                                  const QuadratureConfig& cfg);
double singular_integral(const BasisKind& basis, double center, double x, const GtsParams& nu,
                         const QuadratureConfig& cfg);

/// \int phi(x + z - center) mu(j,k,z) dz over the half-line selected by
/// sign(eta_{jk}), truncated at |z| = z_cut. Returns 0 when no jump is
/// attached to the switch.
double cross_regime_integral(const BasisKind& basis, double center, double x,
                             const SyncJumpSpec& sync, int j, int k, double z_cut,
                             int gl_order = 16);

namespace detail {

/// Panel breakpoints for \int_0^{z_cut} f(sgn y) rate e^{-rate y} dy: resolve
/// the density scale 1/rate near zero and, when given, a localized feature of
/// f at y = feature_center with width feature_width.
std::vector<double> half_line_breaks(double z_cut, double rate, double feature_center,
                                     double feature_width);

}  // namespace detail

/// Test-harness variant: integrate an arbitrary function against the
/// truncated synchronous-jump density (f == 1 recovers the truncated mass
/// 1 - e^{-|eta| z_cut}).
template <typename F>
double sync_jump_integral_fn(const F& f, double eta, double z_cut, int gl_order,
                             double feature_center = 0.0, double feature_width = 0.0) {
    if (eta == 0.0) return 0.0;
    const double rate = std::abs(eta);
    const double sgn = eta > 0.0 ? 1.0 : -1.0;
    auto g = [&](double y) { return f(sgn * y) * rate * std::exp(-rate * y); };
    const auto breaks = detail::half_line_breaks(z_cut, rate, sgn * feature_center, feature_width);
    return gl_panels(g, breaks, gl_order);
}

/// Collocation blocks: phi is the N x N interpolation matrix, phi_L the
/// (H N) x (H N) image of the generator on the basis. Diagonal regime blocks
/// hold the differential terms, q_jj and the same-regime singular integral;
/// block (j,k) holds q_jk times the cross-regime integral. Rows belonging to
/// the two boundary nodes are left unassembled (zero); the time stepper
/// overwrites them with boundary conditions.
struct OperatorBlocks {
    Eigen::MatrixXd phi;
    Eigen::MatrixXd phi_L;
    int regimes = 0;
    int nodes = 0;
    double gram_condition = 0.0;
    bool gram_ill_conditioned = false;
};

OperatorBlocks assemble_blocks(const MarkovLevyModel& model, const BasisKind& basis,
                               const CollocationGrid& grid, const QuadratureConfig& cfg);

}  // namespace rspide
