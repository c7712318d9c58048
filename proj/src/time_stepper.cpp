#include "rspide/time_stepper.hpp"

#include <cmath>
#include <string>

#include "rspide/errors.hpp"

namespace rspide {

void validate(const SolverConfig& cfg) {
    if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0))
        raise(ErrorKind::ValidationError, "theta must lie in [0, 1]");
    if (cfg.n_steps < 1) raise(ErrorKind::ValidationError, "n_steps must be >= 1");
    if (!(cfg.horizon > 0.0)) raise(ErrorKind::ValidationError, "horizon must be positive");
}

Eigen::MatrixXd initial_condition(const CollocationGrid& grid, double barrier_log, int regimes) {
    if (!(barrier_log > grid.x_min && barrier_log < grid.x_max))
        raise(ErrorKind::BarrierOutsideDomain,
              "barrier log-level " + std::to_string(barrier_log) + " must lie inside (" +
                  std::to_string(grid.x_min) + ", " + std::to_string(grid.x_max) + ")");
    Eigen::MatrixXd u0(regimes, grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double v = grid.nodes[i] < barrier_log ? 1.0 : 0.0;  // strict inequality
        for (int r = 0; r < regimes; ++r) u0(r, i) = v;
    }
    return u0;
}

double snap_barrier_to_midpoint(const CollocationGrid& grid, double barrier_log) {
    double best = 0.5 * (grid.nodes[0] + grid.nodes[1]);
    for (int i = 0; i + 1 < grid.size(); ++i) {
        const double mid = 0.5 * (grid.nodes[i] + grid.nodes[i + 1]);
        if (std::abs(mid - barrier_log) < std::abs(best - barrier_log)) best = mid;
    }
    return best;
}

struct ThetaStepper::Factorization {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    Eigen::MatrixXd lhs;       // for residual checks
    Eigen::MatrixXd rhs_op;    // phi + dtau*theta*phi_L (empty when theta == 0)
    double theta = 0.0;
};

ThetaStepper::ThetaStepper(const OperatorBlocks& blocks, const CollocationGrid& grid,
                           const BasisKind& basis, const SolverConfig& cfg) {
    validate(cfg);
    regimes_ = blocks.regimes;
    nodes_ = blocks.nodes;
    dtau_ = cfg.horizon / cfg.n_steps;
    theta_ = cfg.theta;
    phi_ = blocks.phi;
    phi_L_ = blocks.phi_L;

    boundary_low_row_.resize(nodes_);
    boundary_high_row_.resize(nodes_);
    for (int j = 0; j < nodes_; ++j) {
        boundary_low_row_[j] = rbf_eval(basis, grid.nodes[j], grid.x_min, 0);
        boundary_high_row_[j] = rbf_eval(basis, grid.nodes[j], grid.x_max, 0);
    }

    phi_lu_ = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXd>>(phi_);
    main_ = make_factorization(dtau_, theta_);
    if (theta_ > 0.0 && cfg.rannacher_startup) startup_ = make_factorization(0.5 * dtau_, 0.0);
}

std::shared_ptr<ThetaStepper::Factorization> ThetaStepper::make_factorization(
    double dtau, double theta) const {
    const int hn = regimes_ * nodes_;
    auto f = std::make_shared<Factorization>();
    f->theta = theta;
    f->lhs = -dtau * (1.0 - theta) * phi_L_;
    for (int r = 0; r < regimes_; ++r)
        f->lhs.block(r * nodes_, r * nodes_, nodes_, nodes_) += phi_;
    // Boundary rows become pure interpolation rows; the right-hand side pins
    // u(x_min) = 1 and u(x_max) = 0.
    for (int r = 0; r < regimes_; ++r) {
        const int low = r * nodes_;
        const int high = r * nodes_ + nodes_ - 1;
        f->lhs.row(low).setZero();
        f->lhs.row(high).setZero();
        for (int j = 0; j < nodes_; ++j) {
            f->lhs(low, r * nodes_ + j) = boundary_low_row_[j];
            f->lhs(high, r * nodes_ + j) = boundary_high_row_[j];
        }
    }
    if (theta > 0.0) {
        f->rhs_op = dtau * theta * phi_L_;
        for (int r = 0; r < regimes_; ++r)
            f->rhs_op.block(r * nodes_, r * nodes_, nodes_, nodes_) += phi_;
    }
    f->lu.compute(f->lhs);
    (void)hn;
    return f;
}

Eigen::VectorXd ThetaStepper::advance(const Factorization& f, const Eigen::VectorXd& coeffs) const {
    Eigen::VectorXd rhs(regimes_ * nodes_);
    if (f.theta > 0.0) {
        rhs = f.rhs_op * coeffs;
    } else {
        for (int r = 0; r < regimes_; ++r)
            rhs.segment(r * nodes_, nodes_) = phi_ * coeffs.segment(r * nodes_, nodes_);
    }
    for (int r = 0; r < regimes_; ++r) {
        rhs(r * nodes_) = 1.0;
        rhs(r * nodes_ + nodes_ - 1) = 0.0;
    }
    Eigen::VectorXd next = f.lu.solve(rhs);
    if (!next.allFinite())
        raise(ErrorKind::SingularSystem, "time step produced non-finite coefficients");
    const double res = (f.lhs * next - rhs).cwiseAbs().maxCoeff() /
                       (rhs.cwiseAbs().maxCoeff() + 1.0);
    max_residual_ = std::max(max_residual_, res);
    if (!residual_checked_) {
        residual_checked_ = true;
        if (res > 1e-6)
            raise(ErrorKind::SingularSystem,
                  "collocation system is numerically singular (residual " + std::to_string(res) +
                      "); the Gram matrix or shape parameter is ill-conditioned");
    }
    return next;
}

Eigen::VectorXd ThetaStepper::step(const Eigen::VectorXd& coeffs) const {
    return advance(*main_, coeffs);
}

Eigen::VectorXd ThetaStepper::startup_substep(const Eigen::VectorXd& coeffs) const {
    return advance(startup_ ? *startup_ : *main_, coeffs);
}

Eigen::VectorXd ThetaStepper::interpolate(const Eigen::MatrixXd& nodal) const {
    Eigen::VectorXd coeffs(regimes_ * nodes_);
    for (int r = 0; r < regimes_; ++r)
        coeffs.segment(r * nodes_, nodes_) = phi_lu_->solve(nodal.row(r).transpose());
    if (!coeffs.allFinite())
        raise(ErrorKind::SingularSystem, "interpolation system is numerically singular");
    return coeffs;
}

Eigen::MatrixXd ThetaStepper::nodal_values(const Eigen::VectorXd& coeffs) const {
    Eigen::MatrixXd nodal(regimes_, nodes_);
    for (int r = 0; r < regimes_; ++r)
        nodal.row(r) = (phi_ * coeffs.segment(r * nodes_, nodes_)).transpose();
    return nodal;
}

double SolutionSurface::value(int slice, int regime, int node) const {
    return values[slice](regime, node);
}

double SolutionSurface::clipped(int slice, int regime, int node) const {
    return std::clamp(value(slice, regime, node), 0.0, 1.0);
}

double SolutionSurface::evaluate(int slice, int regime, double x) const {
    const int n = grid.size();
    const Eigen::VectorXd& c = coeffs[slice];
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += c(regime * n + j) * rbf_eval(basis, grid.nodes[j], x, 0);
    return acc;
}

double SolutionSurface::max_overshoot() const {
    double worst = 0.0;
    for (const Eigen::MatrixXd& slice : values) {
        worst = std::max(worst, std::max(slice.maxCoeff() - 1.0, -slice.minCoeff()));
    }
    return std::max(worst, 0.0);
}

SolutionSurface solve_with_blocks(const OperatorBlocks& blocks, const CollocationGrid& grid,
                                  const BasisKind& basis, const SolverConfig& cfg) {
    validate(cfg);
    ThetaStepper stepper(blocks, grid, basis, cfg);
    const double dtau = cfg.horizon / cfg.n_steps;

    SolutionSurface surface;
    surface.grid = grid;
    surface.basis = basis;
    surface.config = cfg;
    surface.taus.reserve(cfg.n_steps + 1);
    surface.values.reserve(cfg.n_steps + 1);
    surface.coeffs.reserve(cfg.n_steps + 1);

    Eigen::MatrixXd u0 = initial_condition(grid, cfg.barrier_log, blocks.regimes);
    Eigen::VectorXd coeffs = stepper.interpolate(u0);
    surface.taus.push_back(0.0);
    surface.values.push_back(u0);
    surface.coeffs.push_back(coeffs);

    const int startup_steps =
        (cfg.theta > 0.0 && cfg.rannacher_startup) ? std::min(2, cfg.n_steps) : 0;
    for (int n = 1; n <= cfg.n_steps; ++n) {
        if (n <= startup_steps) {
            coeffs = stepper.startup_substep(coeffs);
            coeffs = stepper.startup_substep(coeffs);
        } else {
            coeffs = stepper.step(coeffs);
        }
        surface.taus.push_back(n * dtau);
        surface.values.push_back(stepper.nodal_values(coeffs));
        surface.coeffs.push_back(coeffs);
    }
    surface.max_residual = stepper.max_residual();
    return surface;
}

SolutionSurface solve(const MarkovLevyModel& model, const BasisKind& basis,
                      const CollocationGrid& grid, const SolverConfig& cfg,
                      const QuadratureConfig& quad) {
    OperatorBlocks blocks = assemble_blocks(model, basis, grid, quad);
    return solve_with_blocks(blocks, grid, basis, cfg);
}

}  // namespace rspide
