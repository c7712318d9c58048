#include "rspide/pide_operator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "rspide/errors.hpp"

namespace rspide {

void validate(const QuadratureConfig& cfg) {
    if (!(cfg.z_cut > 1.0)) raise(ErrorKind::ValidationError, "z_cut must exceed 1");
    if (cfg.panels_inner < 1 || cfg.panels_outer < 1 || cfg.gl_order < 1)
        raise(ErrorKind::ValidationError, "quadrature panel counts must be >= 1");
    if (!(cfg.grading_ratio > 0.0 && cfg.grading_ratio < 1.0))
        raise(ErrorKind::ValidationError, "grading ratio must lie in (0, 1)");
    if (!(cfg.inner_split > 0.0 && cfg.inner_split <= 1.0))
        raise(ErrorKind::ValidationError,
              "inner split must lie in (0, 1]; the compensator changes at |z| = 1");
}

namespace {

void check_basis_measure(const BasisKind& basis, const GtsParams& nu) {
    if (basis.family == BasisFamily::Cubic &&
        std::max(nu.alpha_plus, nu.alpha_minus) >= 1.0)
        raise(ErrorKind::UnsupportedBasisForMeasure,
              "cubic basis is only C^2: admissible for finite-variation measures (alpha < 1)");
}

}  // namespace

LevyIntegralParts<double> singular_integral_parts(const BasisKind& basis, double center,
                                                  double x, const GtsParams& nu,
                                                  const QuadratureConfig& cfg) {
    validate(basis);
    check_basis_measure(basis, nu);
    auto reg = [&](double z) { return rbf_compensated_diff(basis, center, x, z); };
    auto plain = [&](double z) { return rbf_plain_diff(basis, center, x, z); };
    return desingularized_levy_integral(nu, cfg, reg, plain);
}

double singular_integral(const BasisKind& basis, double center, double x, const GtsParams& nu,
                         const QuadratureConfig& cfg) {
    return singular_integral_parts(basis, center, x, nu, cfg).total();
}

namespace detail {

std::vector<double> half_line_breaks(double z_cut, double rate, double feature_center,
                                     double feature_width) {
    // Three scales: the density decay 1/rate, the localized feature of the
    // integrand, and the overall interval.
    std::set<double> cuts{0.0, z_cut};
    for (int i = 1; i < 8; ++i) cuts.insert(z_cut * i / 8.0);
    for (double q = 0.25; q / rate < z_cut; q *= 2.0) cuts.insert(q / rate);
    if (feature_width > 0.0) {
        static const double offsets[] = {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0};
        for (double m : offsets) {
            const double y = feature_center + m * feature_width;
            if (y > 0.0 && y < z_cut) cuts.insert(y);
        }
    }
    std::vector<double> breaks;
    breaks.reserve(cuts.size());
    for (double c : cuts) {
        if (!breaks.empty() && c - breaks.back() < 1e-12) continue;
        breaks.push_back(c);
    }
    return breaks;
}

}  // namespace detail

double cross_regime_integral(const BasisKind& basis, double center, double x,
                             const SyncJumpSpec& sync, int j, int k, double z_cut,
                             int gl_order) {
    validate(basis);
    if (j == k) raise(ErrorKind::DiagonalQuery, "cross-regime integral needs j != k");
    const int h = sync.size();
    if (j < 0 || k < 0 || j >= h || k >= h)
        raise(ErrorKind::IndexOutOfRange, "regime pair out of range");
    const double eta = sync.eta(j, k);
    if (eta == 0.0) return 0.0;  // no jump attached to this switch
    const double width = basis.family == BasisFamily::Cubic ? 1.0 : 1.0 / basis.shape;
    auto f = [&](double z) { return rbf_eval(basis, center, x + z, 0); };
    return sync_jump_integral_fn(f, eta, z_cut, gl_order, center - x, width);
}

namespace {

// Distinct-offset caches: on a uniform grid every entry of the integral
// blocks depends only on x_i - x_j = (i - j) h, so the quadrature cost drops
// from N^2 to 2N-1 evaluations per regime pair.
class OffsetCache {
  public:
    OffsetCache(const CollocationGrid& grid) : grid_(grid) {}

    template <typename F>
    double get(int i, int j, std::map<long, double>& cache, const F& compute) {
        if (grid_.uniform) {
            const long key = i - j;
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            const double d = key * grid_.spacing;
            const double v = compute(0.0, d);  // center 0, point d
            cache.emplace(key, v);
            return v;
        }
        return compute(grid_.nodes[j], grid_.nodes[i]);
    }

  private:
    const CollocationGrid& grid_;
};

}  // namespace

OperatorBlocks assemble_blocks(const MarkovLevyModel& model, const BasisKind& basis,
                               const CollocationGrid& grid, const QuadratureConfig& cfg) {
    validate(model);
    validate(basis);
    validate(cfg);
    const int h = model.regime_count();
    const int n = grid.size();
    const Eigen::MatrixXd& q = model.chain.q;

    OperatorBlocks blocks;
    GramResult gram = gram_matrix(basis, grid);
    blocks.phi = std::move(gram.matrix);
    blocks.gram_condition = gram.condition;
    blocks.gram_ill_conditioned = gram.ill_conditioned;
    blocks.regimes = h;
    blocks.nodes = n;
    blocks.phi_L = Eigen::MatrixXd::Zero(h * n, h * n);

    OffsetCache offsets(grid);
    std::vector<std::map<long, double>> sing_cache(h);
    std::map<std::pair<int, int>, std::map<long, double>> cross_cache;

    for (int r = 0; r < h; ++r) {
        const RegimeModel& regime = model.regimes[r];
        if (regime.gts) check_basis_measure(basis, *regime.gts);
        for (int i = 1; i + 1 < n; ++i) {  // boundary rows stay unassembled
            const double xi = grid.nodes[i];
            for (int j = 0; j < n; ++j) {
                const double cj = grid.nodes[j];
                double entry = regime.mu * rbf_eval(basis, cj, xi, 1) +
                               0.5 * regime.sigma * regime.sigma * rbf_eval(basis, cj, xi, 2) +
                               q(r, r) * rbf_eval(basis, cj, xi, 0);
                if (regime.gts) {
                    entry += offsets.get(i, j, sing_cache[r], [&](double c, double xx) {
                        return singular_integral(basis, c, xx, *regime.gts, cfg);
                    });
                }
                blocks.phi_L(r * n + i, r * n + j) = entry;
            }
            for (int s = 0; s < h; ++s) {
                if (s == r || q(r, s) == 0.0) continue;
                if (model.sync.eta(r, s) == 0.0) continue;
                auto& cache = cross_cache[{r, s}];
                for (int j = 0; j < n; ++j) {
                    const double v = offsets.get(i, j, cache, [&](double c, double xx) {
                        return cross_regime_integral(basis, c, xx, model.sync, r, s, cfg.z_cut,
                                                     cfg.gl_order);
                    });
                    blocks.phi_L(r * n + i, s * n + j) = q(r, s) * v;
                }
            }
        }
    }
    return blocks;
}

}  // namespace rspide
