#pragma once

#include <Eigen/Dense>

namespace rspide {

/// Validated generator (intensity) matrix of the hidden economic-state chain.
/// Off-diagonal entries are non-negative switch intensities per year; rows sum
/// to zero.
struct GeneratorMatrix {
    Eigen::MatrixXd q;

    int size() const { return static_cast<int>(q.rows()); }
};

/// Row-stochastic matrix of state-transition probabilities over a horizon.
struct TransitionMatrix {
    Eigen::MatrixXd p;
    double horizon = 0.0;
};

/// Checks squareness, off-diagonal sign and zero row sums (tolerance 1e-12).
/// Violations are hard errors; no silent repair.
GeneratorMatrix validate_generator(const Eigen::MatrixXd& q);

/// P(t, t+dt) = exp(Q dt) by scaling-and-squaring with the degree-13 Pade
/// approximant. Throws NonFiniteResult if the result overflows.
TransitionMatrix transition_matrix(const GeneratorMatrix& generator, double dt);

/// Dense matrix exponential (Higham's scaling-and-squaring, degree-13 Pade).
/// Shared by the chain and by the frequency-domain oracle, which exponentiates
/// complex matrices.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

}  // namespace rspide
