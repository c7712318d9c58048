#pragma once

#include <complex>

#include <Eigen/Dense>

#include "rspide/model.hpp"

namespace rspide {

/// Frequency-parameterized chain matrix A(w): diagonal Psi_j(w) + q_jj,
/// off-diagonal q_jk Theta^{jk}(w). At w = 0 it reduces to the generator Q.
Eigen::MatrixXcd cf_matrix(const MarkovLevyModel& model, double omega);

/// E[e^{i w X_T} | start regime] = (e^{A(w) T} 1)_start.
std::complex<double> regime_cf(const MarkovLevyModel& model, double omega, double horizon,
                               int start_regime);

struct InversionConfig {
    double tol = 1e-9;          // target accuracy of the frequency integral
    double tail_envelope = 1e-10;  // |integrand| level treated as negligible
    int max_lobes = 512;        // accelerated oscillatory tail budget
    double omega_cap = 5e6;     // hard frequency ceiling
};

/// P(X_T <= k | start regime) by Gil-Pelaez inversion
///   P = 1/2 - (1/pi) \int_0^inf Im(e^{-iwk} cf(w)) / w dw,
/// with graded panels near w = 0 (the integrand tends to E[X_T] - k there),
/// phase-aware panel widths in the main band and an Euler-accelerated
/// oscillatory tail. Raises InversionNotConverged when the budget is
/// exhausted before the estimate settles. This path shares no quadrature
/// code with the collocation operator.
double default_probability(const MarkovLevyModel& model, double horizon, int start_regime,
                           double barrier_log, const InversionConfig& cfg = {});

}  // namespace rspide
