#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "rspide/model.hpp"
#include "rspide/pide_operator.hpp"
#include "rspide/rbf_basis.hpp"

namespace rspide {

/// Time discretization of the forward system
///   (1 - dtau (1-theta) L) U_{n+1} = (1 + dtau theta L) U_n.
/// theta = 0 is the fully implicit scheme (note: this labeling follows the
/// scheme's derivation and is inverted relative to the usual theta-method
/// convention; theta = 0.5 is Crank-Nicolson either way).
struct SolverConfig {
    double theta = 0.0;
    int n_steps = 100;
    double horizon = 1.0;
    double barrier_log = -0.1;
    /// For theta > 0, replace the first two steps by four half-size fully
    /// implicit steps to damp the oscillations seeded by the discontinuous
    /// initial condition.
    bool rannacher_startup = true;
};

void validate(const SolverConfig& cfg);

/// Indicator data 1_{x_i < k} per regime (H x N). Strict inequality: a node
/// exactly at the barrier starts at 0.
Eigen::MatrixXd initial_condition(const CollocationGrid& grid, double barrier_log, int regimes);

/// Nearest inter-node midpoint: placing the barrier there removes the O(h)
/// placement noise of the discontinuous data relative to the grid.
double snap_barrier_to_midpoint(const CollocationGrid& grid, double barrier_log);

/// One theta-step with the factorized system matrix cached across calls.
/// State vectors are stacked basis coefficients (regime-major, length H N).
class ThetaStepper {
  public:
    ThetaStepper(const OperatorBlocks& blocks, const CollocationGrid& grid,
                 const BasisKind& basis, const SolverConfig& cfg);

    /// Full theta-step of size dtau.
    Eigen::VectorXd step(const Eigen::VectorXd& coeffs) const;

    /// Half-size fully implicit step (startup damping for theta > 0).
    Eigen::VectorXd startup_substep(const Eigen::VectorXd& coeffs) const;

    /// Coefficients reproducing the given nodal data (H x N) exactly.
    Eigen::VectorXd interpolate(const Eigen::MatrixXd& nodal) const;

    /// Nodal values (H x N) of the expansion with the given coefficients.
    Eigen::MatrixXd nodal_values(const Eigen::VectorXd& coeffs) const;

    double max_residual() const { return max_residual_; }

  private:
    struct Factorization;
    Eigen::VectorXd advance(const Factorization& f, const Eigen::VectorXd& coeffs) const;
    std::shared_ptr<Factorization> make_factorization(double dtau, double theta) const;

    int regimes_ = 0;
    int nodes_ = 0;
    double dtau_ = 0.0;
    double theta_ = 0.0;
    Eigen::MatrixXd phi_;
    Eigen::MatrixXd phi_L_;
    std::vector<double> boundary_low_row_, boundary_high_row_;
    std::shared_ptr<Factorization> main_, startup_;
    std::shared_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>> phi_lu_;
    mutable double max_residual_ = 0.0;
    mutable bool residual_checked_ = false;
};

/// Default-probability surface u(tau_n, x_i, j) together with the basis
/// coefficients of every slice (for off-node queries).
struct SolutionSurface {
    std::vector<double> taus;
    std::vector<Eigen::MatrixXd> values;   // per slice: H x N nodal values
    std::vector<Eigen::VectorXd> coeffs;   // per slice: stacked coefficients
    CollocationGrid grid;
    BasisKind basis;
    SolverConfig config;
    double max_residual = 0.0;

    int slices() const { return static_cast<int>(taus.size()); }
    int regimes() const { return values.empty() ? 0 : static_cast<int>(values.front().rows()); }

    double value(int slice, int regime, int node) const;
    /// Overshoot-clipped copy of a nodal value (collocation allows a small
    /// excursion outside [0, 1]).
    double clipped(int slice, int regime, int node) const;
    /// RBF evaluation of a slice at an arbitrary point.
    double evaluate(int slice, int regime, double x) const;
    /// Maximum distance of any nodal value from [0, 1].
    double max_overshoot() const;
};

/// March the full system: assemble, interpolate the indicator data, step to
/// the horizon, record every slice.
SolutionSurface solve(const MarkovLevyModel& model, const BasisKind& basis,
                      const CollocationGrid& grid, const SolverConfig& cfg,
                      const QuadratureConfig& quad);

/// Variant reusing preassembled operator blocks.
SolutionSurface solve_with_blocks(const OperatorBlocks& blocks, const CollocationGrid& grid,
                                  const BasisKind& basis, const SolverConfig& cfg);

}  // namespace rspide
