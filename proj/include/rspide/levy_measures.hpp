#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

namespace rspide {

/// Tempering function family. Exponential w(z) = e^{-z} is the only built-in;
/// every named sub-family (VG, CGMY, KoBoL, bilateral Gamma) uses it. The tag
/// is the extension point for other admissible tempering functions
/// (decreasing, w(0+) = 1, faster-than-polynomial decay).
enum class Tempering { Exponential };

/// Six-parameter generalized tempered stable Levy measure
///   nu(dz) = c+ w(b+ z) / z^{1+a+} dz      on z > 0
///          + c- w(b- |z|) / |z|^{1+a-} dz  on z < 0
/// with c± > 0, b± > 0 and stability indices a± < 2.
struct GtsParams {
    double c_plus = 1.0;
    double c_minus = 1.0;
    double beta_plus = 1.0;
    double beta_minus = 1.0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    Tempering tempering = Tempering::Exponential;
};

void validate(const GtsParams& p);

enum class ActivityClass {
    FiniteActivity,                    // max(a+, a-) < 0
    InfiniteActivityFiniteVariation,   // max in [0, 1)
    InfiniteVariation,                 // max in [1, 2)
};

ActivityClass activity_class(const GtsParams& p);

/// Levy density at z != 0 (DomainError at z = 0).
double gts_density(const GtsParams& p, double z);

/// Variance-gamma measure from the (sigma, theta, kappa) parameterization:
/// a± = 0, c± = 1/kappa, and tempering rates from the standard VG identities
///   b+ = (sqrt(theta^2 kappa^2/4 + sigma^2 kappa/2) + theta kappa/2)^{-1}
///   b- = (sqrt(theta^2 kappa^2/4 + sigma^2 kappa/2) - theta kappa/2)^{-1}
/// so that positive theta fattens the positive tail. Verified against the VG
/// closed-form characteristic exponent in the test suite.
GtsParams vg_params(double sigma, double theta, double kappa);

/// CGMY: c± = C, b+ = M, b- = G, a± = Y.
GtsParams cgmy_params(double c, double g, double m, double y);

/// KoBoL: c+ = C p, c- = C q, b± = lambda, a± = Y. The p/q tail weights are
/// used as given; they need not sum to one.
GtsParams kobol_params(double c, double y, double p, double q, double lambda);

/// Symmetric measure dominating the original on both half-lines (Theorem-4
/// style): c = max(c±), a = max(a±), b = min(b±).
GtsParams symmetrized_measure(const GtsParams& p);

/// One regime of the Markov-modulated Levy process: drift, Brownian
/// volatility, and an optional jump measure (absent for pure diffusion).
struct RegimeModel {
    double mu = 0.0;
    double sigma = 0.0;
    std::optional<GtsParams> gts;
};

/// Levy-Khintchine exponent under the |z| <= 1 compensator convention:
///   Psi(w) = i mu w - w^2 sigma^2 / 2
///          + \int (e^{iwz} - 1 - iwz 1_{|z|<1}) nu(dz).
/// Closed forms (with Gamma continuation and incomplete-gamma drift
/// corrections) cover exponential tempering with per-side alpha != 1; the
/// alpha = 1 limit falls back to the de-singularized quadrature and raises
/// QuadratureFailure if panel refinement does not settle to 1e-10.
std::complex<double> characteristic_exponent(const RegimeModel& m, double omega);

/// Synchronous-jump specification: signed exponential decay parameters per
/// ordered regime pair. sign(eta) selects the half-line of the jump, the
/// density itself uses |eta|; a zero entry means no jump is attached to that
/// switch.
struct SyncJumpSpec {
    Eigen::MatrixXd eta;

    int size() const { return static_cast<int>(eta.rows()); }
};

/// |eta| e^{-|eta| |z|} on the half-line matching sign(eta), zero elsewhere.
double sync_jump_density(const SyncJumpSpec& s, int i, int j, double z);

/// Theta^{ij}(u) = |eta| / (|eta| - i u sign(eta)); equals 1 when no jump is
/// attached (point mass at zero).
std::complex<double> sync_jump_cf(const SyncJumpSpec& s, int i, int j, double u);

/// \int_{|z|>1} |z|^n nu(dz), finite for every n under tempering. Used by the
/// moment-finiteness checks and the operator tail bounds.
double gts_tail_moment(const GtsParams& p, int n);

/// \int_{0<|z|<=1} z^2 nu(dz); finite for all alpha < 2.
double gts_inner_quadratic_moment(const GtsParams& p);

/// \int_{|z|<=1} z nu(dz) and \int_{|z|>1} z nu(dz): the compensator drift
/// integrals behind the closed-form exponent corrections.
double gts_compensator_drift_inner(const GtsParams& p);
double gts_compensator_drift_outer(const GtsParams& p);

}  // namespace rspide
